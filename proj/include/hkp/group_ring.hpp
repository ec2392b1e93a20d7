#pragma once

// Exact arithmetic in the rational group ring ℚF of a free group and in
// matrix algebras over it.

#include <utility>
#include <vector>

#include "hkp/rational.hpp"
#include "hkp/word.hpp"

namespace hkp {

/// Finitely supported map Word → ℚ. Terms are kept sorted in length-lex
/// order with no zero coefficients, so equality is structural.
class GroupRingElement {
 public:
  using Term = std::pair<Word, Rational>;

  GroupRingElement() = default;
  /// The scalar c·e.
  explicit GroupRingElement(const Rational& c);
  explicit GroupRingElement(Word w, const Rational& c = Rational(1));

  /// Sums duplicate words and drops zeros.
  static GroupRingElement from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t support_size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Word& w) const;

  GroupRingElement& operator+=(const GroupRingElement& y);
  GroupRingElement& operator-=(const GroupRingElement& y);
  GroupRingElement& operator*=(const Rational& c);

  friend GroupRingElement operator+(GroupRingElement x, const GroupRingElement& y) {
    return x += y;
  }
  friend GroupRingElement operator-(GroupRingElement x, const GroupRingElement& y) {
    return x -= y;
  }
  friend GroupRingElement operator-(GroupRingElement x) { return x *= Rational(-1); }
  friend GroupRingElement operator*(const Rational& c, GroupRingElement x) {
    return x *= c;
  }
  /// Convolution product.
  friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y);

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  std::vector<Term> terms_;
};

/// x ↦ x*, the linear extension of w ↦ w⁻¹.
GroupRingElement involution(const GroupRingElement& x);

/// Coefficient of the identity: the canonical trace of the free group.
Rational trace_e(const GroupRingElement& x);

/// Sum of all coefficients (image under the trivial representation).
Rational augmentation(const GroupRingElement& x);

/// Σ |coefficient|, an upper bound for ‖π(x)‖ in every unitary π.
Rational l1_norm(const GroupRingElement& x);

/// trace_e(x·y) computed without forming the product.
Rational trace_of_product(const GroupRingElement& x, const GroupRingElement& y);

/// Dense rows × cols matrix over ℚF.
class GroupRingMatrix {
 public:
  GroupRingMatrix(int rows, int cols);

  static GroupRingMatrix identity(int n);
  static GroupRingMatrix scalar(const GroupRingElement& x) {
    GroupRingMatrix m(1, 1);
    m(0, 0) = x;
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  GroupRingElement& operator()(int i, int j) { return entries_[index(i, j)]; }
  const GroupRingElement& operator()(int i, int j) const { return entries_[index(i, j)]; }

  bool is_zero() const;
  /// Largest support over all entries.
  std::size_t max_support() const;
  std::size_t total_support() const;

  GroupRingMatrix& operator+=(const GroupRingMatrix& b);
  GroupRingMatrix& operator-=(const GroupRingMatrix& b);
  GroupRingMatrix& operator*=(const Rational& c);

  friend GroupRingMatrix operator+(GroupRingMatrix a, const GroupRingMatrix& b) { return a += b; }
  friend GroupRingMatrix operator-(GroupRingMatrix a, const GroupRingMatrix& b) { return a -= b; }
  friend GroupRingMatrix operator*(const Rational& c, GroupRingMatrix a) { return a *= c; }
  /// Matrix product over the ring. Throws InputError on a shape mismatch.
  friend GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b);
  /// Entrywise left multiplication by a ring element.
  friend GroupRingMatrix operator*(const GroupRingElement& x, const GroupRingMatrix& a);
  friend GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingElement& x);

  friend bool operator==(const GroupRingMatrix&, const GroupRingMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  int rows_;
  int cols_;
  std::vector<GroupRingElement> entries_;
};

/// Transpose with the involution applied entrywise.
GroupRingMatrix adjoint(const GroupRingMatrix& a);

inline bool is_self_adjoint(const GroupRingMatrix& a) { return a == adjoint(a); }

/// Σᵢ trace_e(aᵢᵢ). Throws InputError when `a` is not square.
Rational trace_matrix(const GroupRingMatrix& a);

/// Max over rows of Σⱼ ‖aᵢⱼ‖₁, an upper bound for ‖π(a)‖ when a = a*.
Rational l1_row_bound(const GroupRingMatrix& a);

}  // namespace hkp
