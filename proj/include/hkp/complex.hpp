#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkp/coset_enum.hpp"
#include "hkp/group_ring.hpp"
#include "hkp/presentation.hpp"

namespace hkp {

/// Laplacians carry a uniform factor 2, so Δ₀ = 2(#S − Σ_{s∈S} s).
inline const Rational kLaplacianWeight{2};

/// Cochain complex 0 → C⁰ → C¹ → … with codifferentials dₙ ∈ M_{k_{n+1}×k_n}(ℚF).
/// Degrees 0 and 1 come from the presentation complex: d₀ is the column
/// (1 − gᵢ) over the generators and d₁ the Fox Jacobian of the relators.
struct CochainComplexSpec {
  Presentation presentation;
  std::vector<int> cell_counts;                // k₀, k₁, …
  std::vector<GroupRingMatrix> differentials;  // d₀, d₁, …; dₙ absent past the end
  std::string source;                          // "presentation" or "user-supplied"
  /// The cells form a finite K(G,1), so the complex computes H*(G; ·).
  bool complete = false;

  int top_degree() const { return static_cast<int>(cell_counts.size()) - 1; }
  int cells(int n) const { return cell_counts.at(static_cast<std::size_t>(n)); }
  /// dₙ, or nullptr when it is the zero map out of the top degree.
  const GroupRingMatrix* differential(int n) const {
    if (n < 0 || n >= static_cast<int>(differentials.size())) return nullptr;
    return &differentials[static_cast<std::size_t>(n)];
  }
};

/// User-supplied codifferential dₙ for n ≥ 2.
struct HigherDifferential {
  int degree;
  GroupRingMatrix matrix;
};

/// Builds the presentation complex, appends `higher` differentials and
/// checks π(d_{n+1})·π(dₙ) = 0 exactly under every representation in
/// `validate_with`. Throws InputError on shape mismatch and
/// ChainIdentityViolated when the identity fails.
CochainComplexSpec build_complex(const Presentation& p,
                                 std::vector<HigherDifferential> higher = {},
                                 bool complete = false,
                                 std::span<const Representation> validate_with = {});

/// Exact check of π(d_{n+1})π(dₙ) = 0 for all consecutive pairs.
void validate_chain_identity(const CochainComplexSpec& c, const Representation& pi);

/// The genus-g surface group with its aspherical presentation complex
/// (k = 1, 2g, 1).
CochainComplexSpec surface_complex(int genus);

struct LaplacianBundle {
  int degree;
  GroupRingMatrix full;   // Δₙ = Δₙ⁺ + Δₙ⁻
  GroupRingMatrix plus;   // 2·dₙ*dₙ
  GroupRingMatrix minus;  // 2·dₙ₋₁dₙ₋₁*
};

/// Throws InputError when n is outside [0, top_degree].
LaplacianBundle build_laplacian(const CochainComplexSpec& c, int n);

}  // namespace hkp
