#include "hkp/certificate.hpp"

#include <limits>

#include "hkp/errors.hpp"
#include "hkp/spectral.hpp"

namespace hkp {

namespace {

std::string shape(const GroupRingMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

PolynomialForm effective_form(const Certificate& cert) {
  if (cert.polynomial_form) {
    const auto& f = *cert.polynomial_form;
    if (cert.epsilon && f.c2 != 0 && -f.c1 / f.c2 != *cert.epsilon) {
      throw InputError("epsilon " + to_string(*cert.epsilon) +
                       " disagrees with the polynomial form");
    }
    return f;
  }
  if (!cert.epsilon) throw InputError("certificate needs epsilon or a polynomial form");
  if (*cert.epsilon <= 0) throw InputError("epsilon must be positive");
  return PolynomialForm{Rational(1), -*cert.epsilon};
}

CertificateVerdict verify_certificate(const Presentation& p, const Certificate& cert) {
  const GroupRingMatrix& m = cert.target;
  if (!m.is_square()) throw InputError("certificate target must be square, got " + shape(m));
  if (!is_self_adjoint(m)) throw InputError("certificate target is not self-adjoint");
  const int k = m.rows();
  const PolynomialForm form = effective_form(cert);

  GroupRingMatrix residual = form.c1 * m;
  if (form.c2 != 0) residual += form.c2 * (m * m);
  for (std::size_t i = 0; i < cert.squares.size(); ++i) {
    const auto& g = cert.squares[i];
    if (g.cols() != k) {
      throw InputError("square " + std::to_string(i) + " has shape " + shape(g) +
                       ", expected ?x" + std::to_string(k));
    }
    residual -= adjoint(g) * g;
  }
  const auto& relators = p.relators();
  for (std::size_t i = 0; i < cert.ideal_witnesses.size(); ++i) {
    const auto& w = cert.ideal_witnesses[i];
    if (w.relator < 0 || w.relator >= static_cast<int>(relators.size())) {
      throw InputError("witness " + std::to_string(i) + " references relator " +
                       std::to_string(w.relator) + " of " + std::to_string(relators.size()));
    }
    if (w.left.rows() != k || w.right.cols() != k || w.left.cols() != w.right.rows()) {
      throw InputError("witness " + std::to_string(i) + " has shapes " + shape(w.left) + " and " +
                       shape(w.right) + " for a " + std::to_string(k) + "x" +
                       std::to_string(k) + " target");
    }
    const GroupRingElement r_minus_1 =
        GroupRingElement(relators[static_cast<std::size_t>(w.relator)]) -
        GroupRingElement(Rational(1));
    residual -= (w.left * r_minus_1) * w.right;
  }
  const bool valid = residual.is_zero();
  return CertificateVerdict{valid, std::move(residual)};
}

GapClaim certificate_gap_claim(const Presentation& p, const Certificate& cert) {
  if (!verify_certificate(p, cert).valid) {
    throw ComputationError("unverified-certificate",
                           "certificate for " + cert.group + " does not verify");
  }
  const PolynomialForm f = effective_form(cert);
  GapClaim claim{cert.group, cert.degree, "none", std::nullopt};
  if (f.c2 > 0 && f.c1 < 0) {
    claim.kind = "spectral-gap";
    claim.epsilon = -f.c1 / f.c2;
  } else if (f.c2 == 0 && f.c1 > 0) {
    claim.kind = "psd-only";
  }
  return claim;
}

std::vector<SoundnessRow> soundness_cross_check(const Certificate& cert, const GapClaim& claim,
                                                std::span<const Representation> reps,
                                                double slack) {
  std::vector<SoundnessRow> out;
  for (const auto& pi : reps) {
    const EvaluatedOperator op = evaluate(cert.target, pi, "certificate target");
    const std::vector<double> values = spectrum_low(op, op.dimension());
    const double threshold = kDefaultZeroTolerance * std::max(1.0, op.norm1());
    SoundnessRow row{pi.label(), values.front(), std::numeric_limits<double>::infinity(), true};
    for (double v : values) {
      if (v > threshold) {
        row.min_nonzero = v;
        break;
      }
    }
    if (claim.kind == "spectral-gap") {
      const double eps = to_double(*claim.epsilon);
      for (double v : values) {
        if (v > threshold && v < eps - slack) row.holds = false;
      }
    } else if (claim.kind == "psd-only") {
      row.holds = row.min_eigenvalue >= -slack;
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace hkp
