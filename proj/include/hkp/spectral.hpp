#pragma once

// Evaluation of group-ring matrices under finite representations and the
// spectral quantities of the resulting operators.

#include <limits>
#include <string>
#include <vector>

#include "hkp/coset_enum.hpp"
#include "hkp/group_ring.hpp"
#include "hkp/rational.hpp"

namespace hkp {

inline constexpr double kDefaultZeroTolerance = 1e-8;
inline constexpr int kDefaultDenseLimit = 4096;

/// Block matrix whose (i, j) block is Σ_w a_ij(w)·π(w), assembled in the
/// requested scalar type. Rows are indexed by i·dim π + point.
/// Throws InputError when A mentions a generator π does not cover.
template <typename Scalar>
SparseMatrix<Scalar> evaluate_as(const GroupRingMatrix& a, const Representation& pi);

/// π(A) with exact entries and a floating-point shadow.
class EvaluatedOperator {
 public:
  EvaluatedOperator(SparseMatrix<Rational> exact, std::string provenance);

  int rows() const noexcept { return static_cast<int>(exact_.rows()); }
  int cols() const noexcept { return static_cast<int>(exact_.cols()); }
  int dimension() const noexcept { return rows(); }
  bool is_square() const noexcept { return rows() == cols(); }
  /// Exact symmetry of the rational matrix.
  bool is_symmetric() const noexcept { return symmetric_; }

  const SparseMatrix<Rational>& exact() const noexcept { return exact_; }
  const SparseMatrix<double>& numeric() const noexcept { return numeric_; }
  Matrix<double> dense() const { return Matrix<double>(numeric_); }
  const std::string& provenance() const noexcept { return provenance_; }

  /// Max absolute column sum of the shadow.
  double norm1() const;

 private:
  SparseMatrix<Rational> exact_;
  SparseMatrix<double> numeric_;
  std::string provenance_;
  bool symmetric_;
};

/// Evaluates A under π. When A = A* the result is verified to be exactly
/// symmetric (a failure is a logic error).
EvaluatedOperator evaluate(const GroupRingMatrix& a, const Representation& pi,
                           std::string provenance = {});

/// Wraps an explicit rational matrix (test fixtures, diagnostics).
EvaluatedOperator make_operator(const Matrix<Rational>& m, std::string provenance = {});

struct SpectralOptions {
  double zero_tolerance = kDefaultZeroTolerance;
  /// Above this dimension the Lanczos path is used.
  int dense_limit = kDefaultDenseLimit;
};

struct EigenPairs {
  Vector<double> values;   // ascending
  Matrix<double> vectors;  // columns match values
};

/// The `count` smallest eigenpairs of a symmetric operator.
/// Throws InputError for non-symmetric input, ComputationError when the
/// iterative solver fails to converge.
EigenPairs low_eigenpairs(const EvaluatedOperator& m, int count, const SpectralOptions& opts = {});

/// Lanczos with full reorthogonalization and a spectral shift;
/// exposed for testing against the dense route.
EigenPairs lanczos_lowest(const SparseMatrix<double>& a, int count, unsigned seed = 0x5eed);

/// The `count` smallest eigenvalues, ascending.
std::vector<double> spectrum_low(const EvaluatedOperator& m, int count,
                                 const SpectralOptions& opts = {});

struct GapReport {
  int kernel_dim = 0;
  /// Smallest eigenvalue above the zero cluster; +∞ when there is none.
  double gap = std::numeric_limits<double>::infinity();
  double zero_tolerance = kDefaultZeroTolerance;
  /// zero_tolerance · max(1, ‖M‖₁): eigenvalues at or below it count as zero.
  double threshold = kDefaultZeroTolerance;
  std::vector<double> lowest;  // up to 10 smallest eigenvalues
  bool resolved = false;       // gap ≥ 10 · threshold
};

/// Kernel dimension and gap of a symmetric PSD operator. Throws
/// NotPositiveSemidefinite when an eigenvalue lies below −threshold.
GapReport spectral_gap(const EvaluatedOperator& m, double zero_tolerance = kDefaultZeroTolerance,
                       const SpectralOptions& opts = {});

struct ProjectionMatrix {
  Matrix<double> entries;
  double idempotency_defect = 0;  // ‖P² − P‖_F
  double symmetry_defect = 0;     // ‖P − Pᵀ‖_F
  std::string method;             // "eigen" or "heat"

  int dimension() const { return static_cast<int>(entries.rows()); }
  double trace() const { return entries.trace(); }
  double max_abs_entry() const { return entries.cwiseAbs().maxCoeff(); }
};

ProjectionMatrix make_projection(Matrix<double> p, std::string method);

/// Kernel projection as the limit of exp(−tM): exp(−t₀M) by Taylor series,
/// then repeated squaring (t doubles) until successive iterates differ by
/// less than `tolerance` and e^{−t·gap_hint} ≤ tolerance.
/// Throws UnresolvedGap when gap_hint is not positive.
ProjectionMatrix heat_projection(const EvaluatedOperator& m, double gap_hint, double tolerance);
ProjectionMatrix heat_projection(const EvaluatedOperator& m, const GapReport& gap,
                                 double tolerance);

/// Σ vvᵀ over eigenvectors in the zero cluster. Throws UnresolvedGap when the
/// gap is not resolved.
ProjectionMatrix kernel_projection(const EvaluatedOperator& m,
                                   double zero_tolerance = kDefaultZeroTolerance,
                                   const SpectralOptions& opts = {});

/// Frobenius norm of the difference.
inline double distance(const ProjectionMatrix& p, const ProjectionMatrix& q) {
  return (p.entries - q.entries).norm();
}

}  // namespace hkp
