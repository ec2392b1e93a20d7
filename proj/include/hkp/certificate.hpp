#pragma once

// Exact verification of sum-of-squares spectral gap certificates
//   c₂M² + c₁M = Σᵢ gᵢ*gᵢ + Σⱼ aⱼ(r_{kⱼ} − 1)bⱼ
// in the matrix algebra over the free group ring.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkp/coset_enum.hpp"
#include "hkp/group_ring.hpp"
#include "hkp/presentation.hpp"

namespace hkp {

struct PolynomialForm {
  Rational c2;
  Rational c1;
};

/// aⱼ·(r − 1)·bⱼ with aⱼ of shape k×t and bⱼ of shape t×k.
struct IdealWitness {
  GroupRingMatrix left;
  int relator;
  GroupRingMatrix right;
};

struct Certificate {
  std::string group;
  /// Laplacian degree of the target, when it is one.
  std::optional<int> degree;
  GroupRingMatrix target{1, 1};
  std::optional<Rational> epsilon;
  /// Defaults to (1, −ε).
  std::optional<PolynomialForm> polynomial_form;
  std::vector<GroupRingMatrix> squares;
  std::vector<IdealWitness> ideal_witnesses;
};

/// The polynomial form in effect. Throws InputError when neither a form nor
/// ε is given, or when both are given and disagree.
PolynomialForm effective_form(const Certificate& cert);

struct CertificateVerdict {
  bool valid = false;
  GroupRingMatrix residual{1, 1};
};

/// Exact residual c₂M² + c₁M − Σ gᵢ*gᵢ − Σ aⱼ(rⱼ − 1)bⱼ. Throws InputError on
/// mismatched shapes or a bad relator index; the target must be square and
/// self-adjoint.
CertificateVerdict verify_certificate(const Presentation& p, const Certificate& cert);

struct GapClaim {
  std::string group;
  std::optional<int> degree;
  /// "spectral-gap", "psd-only" or "none".
  std::string kind;
  std::optional<Rational> epsilon;
  std::string scope = "all unitary representations";
};

/// Claim entailed by a verified certificate: c₂ > 0, c₁ < 0 gives
/// σ(π(M)) ⊆ (−∞, 0] ∪ [−c₁/c₂, ∞); c₂ = 0, c₁ > 0 gives π(M) ≥ 0.
/// Throws ComputationError("unverified-certificate") when the residual is
/// nonzero.
GapClaim certificate_gap_claim(const Presentation& p, const Certificate& cert);

struct SoundnessRow {
  std::string representation;
  double min_eigenvalue = 0;
  /// Smallest eigenvalue above the zero cluster (+∞ when none).
  double min_nonzero = 0;
  bool holds = false;
};

/// For a "spectral-gap" claim: σ(π(M)) ⊆ {0} ∪ [ε − slack, ∞) up to the zero
/// threshold. For "psd-only": min eigenvalue ≥ −slack.
std::vector<SoundnessRow> soundness_cross_check(const Certificate& cert, const GapClaim& claim,
                                                std::span<const Representation> reps,
                                                double slack = 1e-6);

}  // namespace hkp
