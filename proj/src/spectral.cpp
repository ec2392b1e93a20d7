#include "hkp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "hkp/errors.hpp"

namespace hkp {

namespace {

int max_generator(const GroupRingMatrix& a) {
  int g = -1;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      for (const auto& t : a(i, j).terms()) {
        for (Letter l : t.first.letters()) g = std::max(g, generator_of(l));
      }
    }
  }
  return g;
}

SparseMatrix<double> shadow(const SparseMatrix<Rational>& m) {
  SparseMatrix<double> out(m.rows(), m.cols());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix<Rational>::InnerIterator it(m, k); it; ++it) {
      if (it.value() != 0) t.emplace_back(it.row(), it.col(), to_double(it.value()));
    }
  }
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

bool exactly_symmetric(const SparseMatrix<Rational>& m) {
  if (m.rows() != m.cols()) return false;
  SparseMatrix<Rational> t = m.transpose();
  SparseMatrix<Rational> diff = m - t;
  return is_exact_zero(diff);
}

struct SpectrumWithVectors {
  GapReport report;
  EigenPairs pairs;
};

SpectrumWithVectors analyze(const EvaluatedOperator& m, double zero_tolerance,
                            const SpectralOptions& opts) {
  if (!m.is_square() || !m.is_symmetric()) {
    throw InputError("spectral analysis requires a symmetric operator (" + m.provenance() + ")");
  }
  const int n = m.dimension();
  SpectrumWithVectors out;
  GapReport& r = out.report;
  r.zero_tolerance = zero_tolerance;
  r.threshold = zero_tolerance * std::max(1.0, m.norm1());

  if (n <= opts.dense_limit) {
    out.pairs = low_eigenpairs(m, n, opts);
  } else {
    int count = std::min(n, 16);
    for (;;) {
      out.pairs = low_eigenpairs(m, count, opts);
      if (out.pairs.values(count - 1) > r.threshold || count == n) break;
      count = std::min(n, 2 * count);
    }
  }
  const auto& vals = out.pairs.values;
  if (vals.size() > 0 && vals(0) < -r.threshold) {
    throw NotPositiveSemidefinite("eigenvalue " + std::to_string(vals(0)) + " below -" +
                                  std::to_string(r.threshold) + " for " + m.provenance());
  }
  r.kernel_dim = 0;
  while (r.kernel_dim < vals.size() && vals(r.kernel_dim) <= r.threshold) ++r.kernel_dim;
  r.gap = r.kernel_dim < vals.size() ? vals(r.kernel_dim) : std::numeric_limits<double>::infinity();
  for (int i = 0; i < std::min<int>(10, static_cast<int>(vals.size())); ++i) r.lowest.push_back(vals(i));
  r.resolved = r.gap >= 10.0 * r.threshold;
  return out;
}

}  // namespace

template <typename Scalar>
SparseMatrix<Scalar> evaluate_as(const GroupRingMatrix& a, const Representation& pi) {
  if (max_generator(a) >= pi.generator_count()) {
    throw InputError("representation '" + pi.label() + "' covers " +
                     std::to_string(pi.generator_count()) +
                     " generators but the matrix uses more");
  }
  const int d = pi.dimension();
  std::vector<Eigen::Triplet<Scalar>> t;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      for (const auto& [w, c] : a(i, j).terms()) {
        const auto img = pi.action(w);
        const Scalar coeff = scalar_cast<Scalar>(c);
        for (int p = 0; p < d; ++p) {
          t.emplace_back(i * d + p, j * d + img[static_cast<std::size_t>(p)], coeff);
        }
      }
    }
  }
  SparseMatrix<Scalar> m(a.rows() * d, a.cols() * d);
  m.setFromTriplets(t.begin(), t.end());
  m.prune([](Eigen::Index, Eigen::Index, const Scalar& v) { return v != Scalar(0); });
  return m;
}

template SparseMatrix<Rational> evaluate_as<Rational>(const GroupRingMatrix&, const Representation&);
template SparseMatrix<double> evaluate_as<double>(const GroupRingMatrix&, const Representation&);

EvaluatedOperator::EvaluatedOperator(SparseMatrix<Rational> exact, std::string provenance)
    : exact_(std::move(exact)),
      numeric_(shadow(exact_)),
      provenance_(std::move(provenance)),
      symmetric_(exactly_symmetric(exact_)) {}

double EvaluatedOperator::norm1() const {
  double best = 0;
  for (int k = 0; k < numeric_.outerSize(); ++k) {
    double s = 0;
    for (SparseMatrix<double>::InnerIterator it(numeric_, k); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

EvaluatedOperator evaluate(const GroupRingMatrix& a, const Representation& pi,
                           std::string provenance) {
  if (provenance.empty()) provenance = "matrix under " + pi.label();
  EvaluatedOperator op(evaluate_as<Rational>(a, pi), std::move(provenance));
  if (a.is_square() && !op.is_symmetric() && is_self_adjoint(a)) {
    throw std::logic_error("evaluation of a self-adjoint matrix is not symmetric");
  }
  return op;
}

EvaluatedOperator make_operator(const Matrix<Rational>& m, std::string provenance) {
  SparseMatrix<Rational> s = m.sparseView();
  return EvaluatedOperator(std::move(s), provenance.empty() ? "explicit matrix" : std::move(provenance));
}

EigenPairs lanczos_lowest(const SparseMatrix<double>& a, int count, unsigned seed) {
  const int n = static_cast<int>(a.rows());
  count = std::min(count, n);
  double sigma = 0;
  for (int k = 0; k < a.outerSize(); ++k) {
    double s = 0;
    for (SparseMatrix<double>::InnerIterator it(a, k); it; ++it) s += std::abs(it.value());
    sigma = std::max(sigma, s);
  }
  sigma = std::max(sigma, 1.0);
  // B = σI − A is PSD and its largest eigenvalues are A's smallest.
  auto apply = [&](const Vector<double>& x) -> Vector<double> { return sigma * x - a * x; };
  const double tol = 1e-10 * sigma;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix<double> locked(n, 0);
  std::vector<double> locked_values;

  auto orthogonalize = [&](Vector<double>& v, const Matrix<double>& basis, int cols) {
    for (int pass = 0; pass < 2; ++pass) {
      if (locked.cols() > 0) v -= locked * (locked.transpose() * v);
      if (cols > 0) v -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * v);
    }
  };

  int krylov = std::min(n, std::max(40, 2 * count + 20));
  bool done = count == 0;
  for (int round = 0; !done && round < 10 * n + 100; ++round) {
    const int free_dim = n - static_cast<int>(locked.cols());
    if (free_dim == 0) break;
    const int m = std::min(krylov, free_dim);
    Matrix<double> q(n, m + 1);
    Vector<double> alpha(m), beta(m);
    Vector<double> v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    orthogonalize(v, q, 0);
    v.normalize();
    q.col(0) = v;
    int steps = m;
    for (int j = 0; j < m; ++j) {
      Vector<double> w = apply(q.col(j));
      alpha(j) = q.col(j).dot(w);
      orthogonalize(w, q, j + 1);
      beta(j) = w.norm();
      if (beta(j) < 1e-12 * sigma) {
        steps = j + 1;
        beta(j) = 0;
        break;
      }
      q.col(j + 1) = w / beta(j);
    }
    Matrix<double> t = Matrix<double>::Zero(steps, steps);
    for (int j = 0; j < steps; ++j) {
      t(j, j) = alpha(j);
      if (j + 1 < steps) t(j, j + 1) = t(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<Matrix<double>> es(t);
    const bool exhaustive = steps == free_dim;
    // Ritz values ascend in B, so A's smallest sit at the top. Collect the
    // contiguous run of converged pairs from there.
    std::vector<int> converged;
    for (int k = steps - 1; k >= 0; --k) {
      const double residual = std::abs(beta(steps - 1) * es.eigenvectors()(steps - 1, k));
      if (residual > tol && !exhaustive) break;
      converged.push_back(k);
    }
    if (converged.empty()) {
      krylov = std::min(free_dim, 2 * krylov);
      continue;
    }
    // A run whose smallest converged value is not below the current count-th
    // locked value proves nothing smaller remains.
    if (static_cast<int>(locked_values.size()) >= count) {
      std::vector<double> sorted = locked_values;
      std::nth_element(sorted.begin(), sorted.begin() + (count - 1), sorted.end());
      const double kth = sorted[static_cast<std::size_t>(count - 1)];
      if (sigma - es.eigenvalues()(converged.front()) >= kth - tol) break;
    }
    for (int k : converged) {
      Vector<double> y = q.leftCols(steps) * es.eigenvectors().col(k);
      if (locked.cols() > 0) y -= locked * (locked.transpose() * y);
      const double ny = y.norm();
      if (ny < 0.5) break;
      y /= ny;
      locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
      locked.col(locked.cols() - 1) = y;
      locked_values.push_back(sigma - es.eigenvalues()(k));
    }
    if (locked.cols() == n) done = true;
  }
  if (static_cast<int>(locked_values.size()) < count) {
    throw ComputationError("lanczos-nonconvergence",
                           "Lanczos failed to converge " + std::to_string(count) + " eigenpairs");
  }
  std::vector<int> order(locked_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return locked_values[static_cast<std::size_t>(x)] < locked_values[static_cast<std::size_t>(y)];
  });
  EigenPairs out;
  out.values.resize(count);
  out.vectors.resize(n, count);
  for (int i = 0; i < count; ++i) {
    out.values(i) = locked_values[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    out.vectors.col(i) = locked.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

EigenPairs low_eigenpairs(const EvaluatedOperator& m, int count, const SpectralOptions& opts) {
  if (!m.is_square() || !m.is_symmetric()) {
    throw InputError("eigenvalues requested for a non-symmetric operator (" + m.provenance() + ")");
  }
  const int n = m.dimension();
  count = std::clamp(count, 0, n);
  if (n <= opts.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Matrix<double>> es(m.dense());
    if (es.info() != Eigen::Success) {
      throw ComputationError("eigensolver-failure", "dense eigensolver failed for " + m.provenance());
    }
    return EigenPairs{es.eigenvalues().head(count), es.eigenvectors().leftCols(count)};
  }
  return lanczos_lowest(m.numeric(), count);
}

std::vector<double> spectrum_low(const EvaluatedOperator& m, int count, const SpectralOptions& opts) {
  const auto pairs = low_eigenpairs(m, count, opts);
  return {pairs.values.data(), pairs.values.data() + pairs.values.size()};
}

GapReport spectral_gap(const EvaluatedOperator& m, double zero_tolerance,
                       const SpectralOptions& opts) {
  return analyze(m, zero_tolerance, opts).report;
}

ProjectionMatrix make_projection(Matrix<double> p, std::string method) {
  ProjectionMatrix out;
  out.idempotency_defect = (p * p - p).norm();
  out.symmetry_defect = (p - p.transpose()).norm();
  out.entries = std::move(p);
  out.method = std::move(method);
  return out;
}

ProjectionMatrix heat_projection(const EvaluatedOperator& m, double gap_hint, double tolerance) {
  if (!(gap_hint > 0)) {
    throw UnresolvedGap("heat projection needs a positive gap (" + m.provenance() + ")");
  }
  if (!m.is_square() || !m.is_symmetric()) {
    throw InputError("heat projection requires a symmetric operator (" + m.provenance() + ")");
  }
  const Matrix<double> a = m.dense();
  const int n = static_cast<int>(a.rows());
  const double norm = m.norm1();
  if (norm == 0) return make_projection(Matrix<double>::Identity(n, n), "heat");

  // exp(−t₀A) with ‖t₀A‖ ≤ 1/2 by a truncated Taylor series.
  double t = 0.5 / norm;
  const Matrix<double> x = -t * a;
  Matrix<double> e = Matrix<double>::Identity(n, n);
  Matrix<double> term = Matrix<double>::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    e += term;
    if (term.norm() < 1e-18) break;
  }
  for (int squarings = 0; squarings < 200; ++squarings) {
    Matrix<double> next = e * e;
    next = 0.5 * (next + next.transpose()).eval();
    t *= 2;
    const double diff = (next - e).norm();
    e = std::move(next);
    if (diff < tolerance && std::exp(-t * gap_hint) <= tolerance) {
      return make_projection(std::move(e), "heat");
    }
  }
  throw ComputationError("heat-nonconvergence",
                         "heat semigroup did not converge for " + m.provenance());
}

ProjectionMatrix heat_projection(const EvaluatedOperator& m, const GapReport& gap,
                                 double tolerance) {
  if (!gap.resolved) {
    throw UnresolvedGap("unresolved spectral gap for " + m.provenance());
  }
  return heat_projection(m, gap.gap, tolerance);
}

ProjectionMatrix kernel_projection(const EvaluatedOperator& m, double zero_tolerance,
                                   const SpectralOptions& opts) {
  const auto s = analyze(m, zero_tolerance, opts);
  if (!s.report.resolved) {
    throw UnresolvedGap("unresolved spectral gap for " + m.provenance() + " (gap " +
                        std::to_string(s.report.gap) + ", threshold " +
                        std::to_string(s.report.threshold) + ")");
  }
  const Matrix<double> v = s.pairs.vectors.leftCols(s.report.kernel_dim);
  return make_projection(v * v.transpose(), "eigen");
}

}  // namespace hkp
