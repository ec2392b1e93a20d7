#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "hkp/certificate.hpp"
#include "hkp/complex.hpp"
#include "hkp/errors.hpp"

using namespace hkp;

namespace {

const Presentation& z3() {
  static const Presentation p = cyclic_group(3);
  return p;
}

GroupRingMatrix scalar(const Presentation& p, const char* s) {
  return GroupRingMatrix::scalar(p.parse_element(s));
}

GroupRingMatrix laplacian0(const Presentation& p) {
  return build_laplacian(build_complex(p), 0).full;
}

// Δ₀² − 6Δ₀ = 4(2 − a − a⁻¹)(−1 − a − a⁻¹) equals 4(a⁻¹ − a⁻²)(a³ − 1) in ℤ[F₁].
Certificate gap_certificate(const char* epsilon) {
  Certificate c;
  c.group = "Z/3";
  c.degree = 0;
  c.target = laplacian0(z3());
  c.epsilon = Rational(epsilon);
  c.ideal_witnesses.push_back({scalar(z3(), "4*a^-1 - 4*a^-2"), 0, scalar(z3(), "1")});
  return c;
}

Certificate sos_certificate(const Presentation& p, std::vector<const char*> squares) {
  Certificate c;
  c.group = "sos";
  c.degree = 0;
  c.target = laplacian0(p);
  c.polynomial_form = PolynomialForm{Rational(0), Rational(1)};
  for (const char* s : squares) c.squares.push_back(scalar(p, s));
  return c;
}

// Eigenvalues of the regular representation of ℤ/m on Δ₀ = 2(2 − a − a⁻¹).
std::vector<double> cyclic_spectrum(int m) {
  std::vector<double> out;
  for (int k = 0; k < m; ++k) out.push_back(2 * (2 - 2 * std::cos(2 * M_PI * k / m)));
  return out;
}

}  // namespace

TEST_CASE("the exact gap certificate for Z/3 verifies") {
  const Certificate c = gap_certificate("6");
  const CertificateVerdict v = verify_certificate(z3(), c);
  CHECK(v.valid);
  CHECK(v.residual.is_zero());
  const GapClaim claim = certificate_gap_claim(z3(), c);
  CHECK(claim.kind == "spectral-gap");
  CHECK(*claim.epsilon == 6);
  CHECK(*claim.degree == 0);
  CHECK(claim.scope == "all unitary representations");
  // The smallest nonzero eigenvalue of the regular representation is exactly 6.
  const auto spec = cyclic_spectrum(3);
  CHECK(*std::min_element(spec.begin() + 1, spec.end()) == doctest::Approx(6));
}

TEST_CASE("a tampered epsilon leaves a nonzero residual") {
  const Certificate c = gap_certificate("5");
  const CertificateVerdict v = verify_certificate(z3(), c);
  CHECK_FALSE(v.valid);
  CHECK(v.residual(0, 0) == z3().parse_element("4 - 2*a - 2*a^-1"));
  CHECK_THROWS_AS(certificate_gap_claim(z3(), c), ComputationError);
}

TEST_CASE("the Laplacian is a sum of squares") {
  const Certificate c = sos_certificate(z3(), {"1 - a", "1 - a"});
  CHECK(verify_certificate(z3(), c).valid);
  CHECK(certificate_gap_claim(z3(), c).kind == "psd-only");

  const Presentation f2 = free_group(2);
  const Certificate f = sos_certificate(f2, {"1 - a", "1 - b", "1 - a", "1 - b"});
  CHECK(verify_certificate(f2, f).valid);
  const Certificate short_by_one = sos_certificate(f2, {"1 - a", "1 - b", "1 - a"});
  CHECK_FALSE(verify_certificate(f2, short_by_one).valid);
}

TEST_CASE("verification ignores the order of squares and witnesses") {
  const Presentation f2 = free_group(2);
  Certificate c = sos_certificate(f2, {"1 - a", "1 - b", "1 - a", "1 - b"});
  // An extra square, matched by the same term added to the target.
  c.squares.push_back(scalar(f2, "a - b"));
  c.polynomial_form = PolynomialForm{Rational(0), Rational(1)};
  c.target = c.target + adjoint(scalar(f2, "a - b")) * scalar(f2, "a - b");
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(c.squares.begin(), c.squares.end(), rng);
    CHECK(verify_certificate(f2, c).valid);
  }

  Certificate g = gap_certificate("6");
  g.ideal_witnesses = {{scalar(z3(), "4*a^-1"), 0, scalar(z3(), "1")},
                       {scalar(z3(), "-4*a^-2"), 0, scalar(z3(), "1")}};
  CHECK(verify_certificate(z3(), g).valid);
  std::reverse(g.ideal_witnesses.begin(), g.ideal_witnesses.end());
  CHECK(verify_certificate(z3(), g).valid);
}

TEST_CASE("malformed certificates are input errors") {
  Certificate c = gap_certificate("6");
  c.ideal_witnesses.front().relator = 1;
  CHECK_THROWS_AS(verify_certificate(z3(), c), InputError);

  c = gap_certificate("6");
  c.ideal_witnesses.front().left = GroupRingMatrix(1, 2);
  CHECK_THROWS_AS(verify_certificate(z3(), c), InputError);

  c = gap_certificate("6");
  c.squares.push_back(GroupRingMatrix(2, 2));
  CHECK_THROWS_AS(verify_certificate(z3(), c), InputError);

  c = gap_certificate("6");
  c.target = scalar(z3(), "a");
  CHECK_THROWS_AS(verify_certificate(z3(), c), InputError);

  c = gap_certificate("6");
  c.target = GroupRingMatrix(1, 2);
  CHECK_THROWS_AS(verify_certificate(z3(), c), InputError);

  c = gap_certificate("6");
  c.polynomial_form = PolynomialForm{Rational(1), Rational(-5)};
  CHECK_THROWS_AS(effective_form(c), InputError);
  c.polynomial_form = PolynomialForm{Rational(1), Rational(-6)};
  CHECK(effective_form(c).c1 == -6);

  c.epsilon.reset();
  c.polynomial_form.reset();
  CHECK_THROWS_AS(effective_form(c), InputError);
}

TEST_CASE("claims are sound on finite quotients") {
  const Certificate c = gap_certificate("6");
  const GapClaim claim = certificate_gap_claim(z3(), c);
  const std::vector<Representation> reps{permutation_rep(todd_coxeter(z3(), {}), "regular"),
                                         Representation::trivial(1)};
  const auto rows = soundness_cross_check(c, claim, reps);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].holds);
  CHECK(rows[0].min_nonzero == doctest::Approx(6).epsilon(1e-9));
  CHECK(rows[1].holds);
  CHECK(std::isinf(rows[1].min_nonzero));

  // A claim stronger than the certificate shows up as a failing row.
  GapClaim inflated = claim;
  inflated.epsilon = Rational(7);
  CHECK_FALSE(soundness_cross_check(c, inflated, reps)[0].holds);

  const Certificate s = sos_certificate(z3(), {"1 - a", "1 - a"});
  for (const auto& r : soundness_cross_check(s, certificate_gap_claim(z3(), s), reps)) {
    CHECK(r.holds);
    CHECK(r.min_eigenvalue > -1e-9);
  }
}
