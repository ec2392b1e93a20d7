#include "hkp/complex.hpp"

#include <algorithm>

#include "hkp/errors.hpp"
#include "hkp/fox.hpp"
#include "hkp/spectral.hpp"

namespace hkp {

CochainComplexSpec build_complex(const Presentation& p, std::vector<HigherDifferential> higher,
                                 bool complete, std::span<const Representation> validate_with) {
  const int k1 = p.generator_count();
  GroupRingMatrix d0(k1, 1);
  for (int i = 0; i < k1; ++i) {
    d0(i, 0) = GroupRingElement(Rational(1)) - GroupRingElement(Word{letter_of(i)});
  }
  CochainComplexSpec c{p, {1, k1}, {d0}, higher.empty() ? "presentation" : "user-supplied",
                       complete};
  if (!p.relators().empty()) {
    c.cell_counts.push_back(static_cast<int>(p.relators().size()));
    c.differentials.push_back(fox_jacobian(p));
  } else if (!higher.empty()) {
    throw InputError("higher codifferentials require a presentation with relators");
  }

  std::sort(higher.begin(), higher.end(),
            [](const auto& a, const auto& b) { return a.degree < b.degree; });
  for (auto& h : higher) {
    const int expected = static_cast<int>(c.differentials.size());
    if (h.degree != expected) {
      throw InputError("codifferential of degree " + std::to_string(h.degree) +
                       " supplied but degree " + std::to_string(expected) + " expected next");
    }
    if (h.matrix.cols() != c.cell_counts.back()) {
      throw InputError("d" + std::to_string(h.degree) + " has " +
                       std::to_string(h.matrix.cols()) + " columns, expected k" +
                       std::to_string(h.degree) + " = " + std::to_string(c.cell_counts.back()));
    }
    c.cell_counts.push_back(h.matrix.rows());
    c.differentials.push_back(std::move(h.matrix));
  }
  for (const auto& pi : validate_with) validate_chain_identity(c, pi);
  return c;
}

void validate_chain_identity(const CochainComplexSpec& c, const Representation& pi) {
  for (std::size_t n = 0; n + 1 < c.differentials.size(); ++n) {
    const SparseMatrix<Rational> lower = evaluate_as<Rational>(c.differentials[n], pi);
    const SparseMatrix<Rational> upper = evaluate_as<Rational>(c.differentials[n + 1], pi);
    const SparseMatrix<Rational> product = upper * lower;
    if (!is_exact_zero(product)) {
      throw ChainIdentityViolated("d" + std::to_string(n + 1) + "·d" + std::to_string(n) +
                                  " is nonzero under " + pi.label());
    }
  }
}

CochainComplexSpec surface_complex(int genus) {
  CochainComplexSpec c = build_complex(surface_group(genus), {}, true);
  return c;
}

LaplacianBundle build_laplacian(const CochainComplexSpec& c, int n) {
  if (n < 0 || n > c.top_degree()) {
    throw InputError("degree " + std::to_string(n) + " out of range [0, " +
                     std::to_string(c.top_degree()) + "]");
  }
  const int k = c.cells(n);
  GroupRingMatrix plus(k, k);
  GroupRingMatrix minus(k, k);
  if (const auto* d = c.differential(n)) plus = kLaplacianWeight * (adjoint(*d) * *d);
  if (const auto* d = c.differential(n - 1)) minus = kLaplacianWeight * (*d * adjoint(*d));
  return LaplacianBundle{n, plus + minus, std::move(plus), std::move(minus)};
}

}  // namespace hkp
