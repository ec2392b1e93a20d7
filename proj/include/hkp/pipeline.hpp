#pragma once

// End-to-end computations on a cochain complex: projections under a
// representation, Betti numbers of finite quotients, Lück ratios, trace
// upper bounds, Euler traces and the box-space obstruction report.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkp/certificate.hpp"
#include "hkp/complex.hpp"
#include "hkp/coset_enum.hpp"
#include "hkp/spectral.hpp"

namespace hkp {

inline constexpr double kDefaultProjectionTolerance = 1e-10;

struct PipelineOptions {
  double zero_tolerance = kDefaultZeroTolerance;
  /// Convergence tolerance of the heat semigroup.
  double projection_tolerance = kDefaultProjectionTolerance;
  SpectralOptions spectral;
  int threads = 1;
};

enum class ProjectionKind { full, plus, minus };

std::string to_string(ProjectionKind k);
/// "full", "plus" or "minus". Throws InputError otherwise.
ProjectionKind parse_projection_kind(std::string_view s);

/// dim ker π(Δₙ⁺) + dim ker π(Δₙ⁻) against dim Cⁿ(π) + dim ker π(Δₙ).
struct HodgeCount {
  long kernel_plus = 0;
  long kernel_minus = 0;
  long cochain_dim = 0;
  long kernel_full = 0;
  bool holds() const { return kernel_plus + kernel_minus == cochain_dim + kernel_full; }
};

struct KazhdanProjections {
  int degree = 0;
  std::string representation;
  GapReport gap_full, gap_plus, gap_minus;
  ProjectionMatrix full, plus, minus;  // eigensolver route
  double factorization_defect = 0;     // ‖pₙ − pₙ⁺pₙ⁻‖_F
  double heat_distance = 0;            // max over the three of ‖heat − eigen‖_F
  double laplacian_residual = 0;       // ‖π(Δₙ)pₙ‖_F
  /// Ranks of π(dₙ) and π(dₙ₋₁) over ℚ; zero for absent maps.
  long rank_d = 0;
  long rank_d_prev = 0;
  /// ker π(Δₙ⁺) = ker π(dₙ) and ker π(Δₙ⁻) = ker π(dₙ₋₁*) by dimension.
  bool rank_check = false;
  HodgeCount hodge;
};

/// pₙ, pₙ⁺, pₙ⁻ under π. Throws UnresolvedGap when any of the three gaps is
/// unresolved.
KazhdanProjections higher_kazhdan_projection(const CochainComplexSpec& c, int n,
                                             const Representation& pi,
                                             const PipelineOptions& opts = {});

HodgeCount hodge_count(const CochainComplexSpec& c, int n, const Representation& pi,
                       const PipelineOptions& opts = {});

/// dim ker π(Δₙ) with a resolved gap. For the quasi-regular representation of
/// G/N this is βⁿ(N). Throws UnresolvedGap.
long betti_finite_quotient(const CochainComplexSpec& c, int n, const Representation& pi,
                           const PipelineOptions& opts = {});

struct BettiRow {
  long index = 0;
  long betti = 0;
  GapReport gap;
};

/// One row per chain member, in chain order.
std::vector<BettiRow> betti_along_chain(const CochainComplexSpec& c, int n,
                                        const QuotientChain& chain,
                                        const PipelineOptions& opts = {});

struct LuckReport {
  int degree = 0;
  std::vector<BettiRow> rows;
  std::vector<Rational> ratios;  // βⁿ(Nᵢ)/[G:Nᵢ]
  /// |r_k − r_{k−1}| for the last two members; absent for a single member.
  std::optional<Rational> cauchy_tail;
  /// (r_k·i_k − r_{k−1}·i_{k−1})/(i_k − i_{k−1}): the limit when βⁿ(Nᵢ) is
  /// affine in the index. Equals the last ratio for a single member.
  Rational extrapolated_limit;
};

LuckReport luck_approximation(const CochainComplexSpec& c, int n, const QuotientChain& chain,
                              const PipelineOptions& opts = {});

struct UpperBoundOptions {
  /// Defaults to the ℓ₁ row bound of Δₙ; a smaller value is rejected.
  std::optional<Rational> norm_bound;
  /// Spectral gap hypothesis ε for the lower bounds; none when absent.
  std::optional<double> gap_hint;
  int max_power = 12;
  /// Largest total support of a power of I − Δₙ/R before stopping.
  std::size_t term_budget = 2'000'000;
  /// Coset bound when the trace is taken in a finite group.
  long max_cosets = 4096;
};

struct UpperBoundReport {
  int degree = 0;
  Rational norm_bound;
  std::string trace_mode;      // "free" or "finite"
  std::vector<Rational> upper;  // u_1, u_2, …
  std::vector<double> lower;    // u_M − kₙ(1 − ε/R)^M, when gap_hint is set
  bool cutoff = false;          // stopped before max_power
};

/// u_M = τ((I − Δₙ/R)^M) computed exactly. Without relators τ is the
/// identity coefficient in the free group; with relators the presented group
/// must be finite (enumerated) and τ = Tr λ(·)/|G|. Otherwise throws
/// ComputationError("trace-unavailable").
UpperBoundReport l2_betti_upper_bounds(const CochainComplexSpec& c, int n,
                                       const UpperBoundOptions& opts = {});

/// Every prime factor of the reduced denominator of q divides some order.
/// Throws InputError on a nonpositive order.
bool lambda_ring_membership(const Rational& q, std::span<const long> finite_subgroup_orders);

struct EulerRow {
  long index = 0;
  std::vector<long> betti;  // degrees 0..top
  Rational trace;           // Σₙ(−1)ⁿ βⁿ / index
};

struct EulerReport {
  Rational cell_characteristic;  // Σₙ(−1)ⁿ kₙ
  std::vector<EulerRow> rows;
  bool multiplicative = true;  // every trace equals cell_characteristic
};

/// Throws InputError when the complex is not complete.
EulerReport euler_class_trace(const CochainComplexSpec& c, const QuotientChain& chain,
                              const PipelineOptions& opts = {});

struct BetaReference {
  Rational value;
  std::string provenance;  // "user-cited" or "luck-extrapolated"
  std::string citation;
};

struct ObstructionRow {
  long index = 0;
  long d_star_value = 0;
  Rational lifted_value;
  Rational discrepancy;
  double gap = 0;
};

struct ObstructionReport {
  int degree = 0;
  BetaReference beta_ref;
  std::vector<ObstructionRow> rows;
  std::string verdict;  // "eventually-equal", "persistent-discrepancy" or "inconclusive"
  double min_gap = 0;
  bool gap_decay = false;
  /// "per-representation" or "certified-uniform".
  std::string gap_status;
  std::optional<GapClaim> gap_claim;
  /// Set only for a persistent discrepancy against a user-cited reference
  /// with a certified uniform gap in this degree.
  bool assembly_obstruction = false;
  std::vector<std::string> notes;
};

/// Throws InputError for an unknown provenance label.
ObstructionReport box_obstruction_report(const CochainComplexSpec& c, int n,
                                         const QuotientChain& chain, const BetaReference& beta,
                                         std::optional<GapClaim> claim = std::nullopt,
                                         const PipelineOptions& opts = {});

struct GhostReport {
  int degree = 0;
  ProjectionKind kind = ProjectionKind::full;
  std::vector<long> indices;
  std::vector<double> max_entries;
  /// Strictly decreasing over at least two members.
  bool ghost_like = false;
};

GhostReport ghost_diagnostic(const CochainComplexSpec& c, int n, const QuotientChain& chain,
                             ProjectionKind kind = ProjectionKind::full,
                             const PipelineOptions& opts = {});

}  // namespace hkp
