#pragma once

// Exact rational scalar used by every symbolic computation, plus the Eigen
// glue that lets it sit inside Eigen::Matrix / Eigen::SparseMatrix.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <string_view>

namespace hkp {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar>;

/// Parses "p/q", "p" or "-p/q" (whitespace not allowed). Throws InputError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1) form; parse_rational inverts it.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

template <typename Scalar>
Scalar scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return static_cast<Scalar>(q.convert_to<double>());
  }
}

/// Entrywise conversion of an exact matrix to floating point.
template <typename Derived>
Matrix<double> to_double(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const Rational& q) { return q.convert_to<double>(); });
}

inline Matrix<double> to_double(const SparseMatrix<Rational>& m) {
  Matrix<double> out = Matrix<double>::Zero(m.rows(), m.cols());
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix<Rational>::InnerIterator it(m, k); it; ++it) {
      out(it.row(), it.col()) = it.value().convert_to<double>();
    }
  }
  return out;
}

/// True when every stored entry is exactly zero.
template <typename Scalar>
bool is_exact_zero(const SparseMatrix<Scalar>& m) {
  for (int k = 0; k < m.outerSize(); ++k) {
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, k); it; ++it) {
      if (it.value() != 0) return false;
    }
  }
  return true;
}

/// Exact rank over the rationals by Gaussian elimination.
long exact_rank(const SparseMatrix<Rational>& m);

}  // namespace hkp
