#pragma once

// Todd–Coxeter enumeration of finite quotients and the permutation
// representations they induce.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkp/presentation.hpp"
#include "hkp/rational.hpp"

namespace hkp {

inline constexpr long kDefaultMaxCosets = 1'000'000;
inline constexpr int kDefaultBallRadius = 6;

/// Complete, standardized coset table: right action of the generators on
/// cosets 0..coset_count-1, with coset 0 the subgroup itself.
class CosetTable {
 public:
  /// `images[g][c]` is c·g. Validates that every image is a permutation.
  CosetTable(int generator_count, std::vector<std::vector<int>> images);

  int coset_count() const noexcept { return count_; }
  int generator_count() const noexcept { return static_cast<int>(forward_.size()); }

  int act(int coset, Letter l) const {
    const auto g = static_cast<std::size_t>(generator_of(l));
    return l > 0 ? forward_[g][static_cast<std::size_t>(coset)]
                 : backward_[g][static_cast<std::size_t>(coset)];
  }
  int act(int coset, const Word& w) const {
    for (Letter l : w.letters()) coset = act(coset, l);
    return coset;
  }
  std::span<const int> permutation(int generator) const {
    return forward_[static_cast<std::size_t>(generator)];
  }

  /// Every relator fixes every coset.
  bool satisfies(std::span<const Word> relators) const;
  bool is_transitive() const;

  friend bool operator==(const CosetTable&, const CosetTable&) = default;

 private:
  int count_;
  std::vector<std::vector<int>> forward_;
  std::vector<std::vector<int>> backward_;
};

/// HLT enumeration of the cosets of ⟨subgroup_generators⟩ in
/// ⟨generators | relators ∪ extra_relators⟩. With no subgroup generators this
/// is the regular action of the quotient by the normal closure of
/// `extra_relators`. Throws EnumerationOverflow when more than `max_cosets`
/// cosets are simultaneously alive.
CosetTable todd_coxeter(const Presentation& p, std::span<const Word> extra_relators,
                        long max_cosets = kDefaultMaxCosets,
                        std::span<const Word> subgroup_generators = {});

/// Finite permutation representation: generator g acts by the permutation
/// images[g], realized as the matrix with a 1 at (c, c·g). Orthogonal, and
/// a homomorphism: matrix(uv) = matrix(u)·matrix(v).
class Representation {
 public:
  Representation(std::string label, std::vector<std::vector<int>> images);

  /// The one-dimensional trivial representation.
  static Representation trivial(int generator_count);

  const std::string& label() const noexcept { return label_; }
  int dimension() const noexcept { return dim_; }
  int generator_count() const noexcept { return static_cast<int>(forward_.size()); }

  /// Point images c ↦ c·w.
  std::vector<int> action(const Word& w) const;

  template <typename Scalar>
  SparseMatrix<Scalar> matrix(const Word& w) const {
    const auto img = action(w);
    std::vector<Eigen::Triplet<Scalar>> t;
    t.reserve(img.size());
    for (int c = 0; c < dim_; ++c) t.emplace_back(c, img[static_cast<std::size_t>(c)], Scalar(1));
    SparseMatrix<Scalar> m(dim_, dim_);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  /// Every relator maps to the identity permutation.
  bool respects(std::span<const Word> relators) const;

 private:
  std::string label_;
  int dim_;
  std::vector<std::vector<int>> forward_;
  std::vector<std::vector<int>> backward_;
};

/// The permutation representation on ℓ₂ of the cosets.
Representation permutation_rep(const CosetTable& t, std::string label = {});

struct QuotientMember {
  std::vector<Word> extra_relators;
  CosetTable table;
  Representation rep;
  long index;
};

/// Result of checking that every nontrivial reduced word up to a radius acts
/// nontrivially in some member of the chain.
struct SeparationCheck {
  int radius = 0;
  bool separated = true;
  /// Shortest (then length-lex first) word acting trivially everywhere.
  std::optional<Word> witness;
};

struct QuotientChain {
  std::vector<QuotientMember> members;
  SeparationCheck separation;
  std::vector<std::string> warnings;
};

/// Builds every member (optionally in parallel), checks that indices strictly
/// increase, and records a warning when separation fails on the word ball.
QuotientChain quotient_chain(const Presentation& p,
                             const std::vector<std::vector<Word>>& chain_spec,
                             int ball_radius = kDefaultBallRadius,
                             long max_cosets = kDefaultMaxCosets, int threads = 1);

SeparationCheck check_separation(const Presentation& p, std::span<const CosetTable> tables,
                                 int radius);

}  // namespace hkp
