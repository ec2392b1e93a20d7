// One PASS/FAIL line per acceptance criterion. Exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hkp/experiment.hpp"
#include "hkp/fox.hpp"
#include "hkp/spectral.hpp"

using namespace hkp;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kIdempotency = 1e-8;
constexpr double kResidualPerGap = 1e-6;
constexpr double kFactorization = 1e-6;
constexpr double kHeatEigen = 1e-6;
constexpr double kSoundnessSlack = 1e-6;
constexpr double kBoundTarget = 1e-3;
constexpr double kBoundFloor = 1e-12;
constexpr double kGhostSlack = 1e-9;
constexpr double kBudget1 = 10, kBudget2 = 10, kBudget3 = 120, kBudget7 = 1, kBudget9 = 30;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

LoadedExperiment experiment(const std::string& file) {
  return load(load_experiment(fs::path(HKP_DATA_DIR) / file));
}

std::vector<LoadedExperiment> corpus() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(HKP_DATA_DIR)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LoadedExperiment> out;
  for (const auto& f : files) out.push_back(load(load_experiment(f)));
  return out;
}

const Json* result_for_degree(const Json& report, int degree) {
  for (const auto& r : report["results"]) {
    if (r["degree"] == degree) return &r;
  }
  return nullptr;
}

std::string str(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

Outcome criterion1() {
  Outcome o;
  const LoadedExperiment e = experiment("free2.json");
  const Json betti = run_command("betti", e).json;
  const Json luck = run_command("luck", e).json;
  const Json* b = result_for_degree(betti, 1);
  const Json* l = result_for_degree(luck, 1);
  o.require(b && l, "degree 1 missing");
  if (!o.pass) return o;
  const std::vector<long> m = {2, 3, 4, 5};
  const auto& rows = (*l)["rows"];
  o.require(rows.size() == m.size(), "chain length");
  Rational previous(2);
  for (std::size_t i = 0; i < m.size() && o.pass; ++i) {
    const long index = m[i] * m[i];
    o.require((*b)["rows"][i]["betti"] == index + 1, "betti m^2+1 at m=" + std::to_string(m[i]));
    const Rational ratio = parse_rational(rows[i]["ratio"].get<std::string>());
    o.require(ratio == Rational(index + 1, index), "ratio at m=" + std::to_string(m[i]));
    o.require(ratio < previous && ratio > 1, "monotone approach to 1");
    previous = ratio;
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const LoadedExperiment e = experiment("free2.json");
  o.require(e.spec.beta_ref && e.spec.beta_ref->value == 1, "beta_ref is not 1");
  const ObstructionReport r = box_obstruction_report(e.complex, 1, e.chain, *e.spec.beta_ref);
  for (const auto& row : r.rows) {
    o.require(row.discrepancy == 1, "discrepancy at index " + std::to_string(row.index));
    // Closed form βⁿ(Nᵢ) − [G:Nᵢ]·1 with βⁿ(Nᵢ) = 1 + [G:Nᵢ].
    o.require(row.discrepancy == Rational(1 + row.index) - Rational(row.index), "closed form");
  }
  o.require(r.verdict == "persistent-discrepancy", "verdict " + r.verdict);
  o.require(r.gap_decay, "gap decay not flagged");
  o.require(!r.assembly_obstruction, "assembly obstruction claimed");
  const Json cli = run_command("obstruct", e).json;
  const Json* d1 = result_for_degree(cli, 1);
  o.require(d1 && (*d1)["verdict"] == "persistent-discrepancy", "obstruct command verdict");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const LoadedExperiment e = experiment("genus2.json");
  const auto& members = e.chain.members;
  o.require(members.size() == 2 && members[0].index == 16 && members[1].index == 81,
            "chain indices");
  if (!o.pass) return o;
  const auto b1 = betti_along_chain(e.complex, 1, e.chain);
  const auto b2 = betti_along_chain(e.complex, 2, e.chain);
  for (std::size_t i = 0; i < 2; ++i) {
    o.require(b1[i].betti == 2 + 2 * b1[i].index, "degree-1 betti " + std::to_string(b1[i].betti));
    o.require(b2[i].betti == 1, "degree-2 betti " + std::to_string(b2[i].betti));
  }
  const EulerReport eu = euler_class_trace(e.complex, e.chain);
  for (const auto& row : eu.rows) o.require(row.trace == -2, "euler trace " + to_string(row.trace));
  const ObstructionReport ob =
      box_obstruction_report(e.complex, 2, e.chain, {Rational(0), "user-cited", "surface"});
  for (const auto& row : ob.rows) o.require(row.discrepancy == 1, "degree-2 discrepancy");
  o.require(ob.verdict == "persistent-discrepancy", "degree-2 verdict " + ob.verdict);
  const GhostReport g = ghost_diagnostic(e.complex, 2, e.chain);
  o.require(g.max_entries[0] <= 1.0 / 16 + kGhostSlack, "ghost 1/16: " + str(g.max_entries[0]));
  o.require(g.max_entries[1] <= 1.0 / 81 + kGhostSlack, "ghost 1/81: " + str(g.max_entries[1]));
  return o;
}

Outcome criterion4(const std::vector<LoadedExperiment>& all) {
  Outcome o;
  int checked = 0;
  for (const auto& e : all) {
    for (const auto& m : e.chain.members) {
      for (int n = 0; n <= e.complex.top_degree(); ++n) {
        const HodgeCount h = hodge_count(e.complex, n, m.rep);
        ++checked;
        o.require(h.holds(), e.spec.name + " index " + std::to_string(m.index) + " degree " +
                                 std::to_string(n));
      }
    }
  }
  o.detail = o.pass ? std::to_string(checked) + " instances" : o.detail;
  return o;
}

Outcome criterion5(const std::vector<LoadedExperiment>& all) {
  Outcome o;
  double worst_idem = 0, worst_res = 0, worst_fact = 0, worst_heat = 0;
  for (const auto& e : all) {
    for (const auto& m : e.chain.members) {
      for (int n = 0; n <= e.complex.top_degree(); ++n) {
        const KazhdanProjections k = higher_kazhdan_projection(e.complex, n, m.rep);
        const std::string where = e.spec.name + "/" + std::to_string(m.index) + "/" + std::to_string(n);
        for (const ProjectionMatrix* p : {&k.full, &k.plus, &k.minus}) {
          const double idem = (p->entries * p->entries - p->entries).norm();
          worst_idem = std::max(worst_idem, idem);
          o.require(idem <= kIdempotency, "idempotency " + where);
        }
        const double bound = std::isinf(k.gap_full.gap) ? 0.0 : kResidualPerGap * k.gap_full.gap;
        worst_res = std::max(worst_res, k.laplacian_residual);
        o.require(k.laplacian_residual <= std::max(bound, kBoundFloor), "residual " + where);
        worst_fact = std::max(worst_fact, k.factorization_defect);
        o.require(k.factorization_defect <= kFactorization, "factorization " + where);
        worst_heat = std::max(worst_heat, k.heat_distance);
        o.require(k.heat_distance <= kHeatEigen, "heat vs eigen " + where);
      }
    }
  }
  if (o.pass) {
    o.detail = "max idempotency " + str(worst_idem) + ", residual " + str(worst_res) +
               ", factorization " + str(worst_fact) + ", heat " + str(worst_heat);
  }
  return o;
}

Outcome criterion6(const std::vector<LoadedExperiment>& all) {
  Outcome o;
  for (const auto& e : all) {
    const Presentation& p = e.spec.presentation;
    for (const auto& m : e.chain.members) {
      for (int n = 0; n + 1 <= e.complex.top_degree(); ++n) {
        const GroupRingMatrix* d = e.complex.differential(n);
        const GroupRingMatrix* next = e.complex.differential(n + 1);
        if (!d || !next) continue;
        const SparseMatrix<Rational> prod = evaluate_as<Rational>(*next, m.rep) *
                                            evaluate_as<Rational>(*d, m.rep);
        o.require(is_exact_zero(prod), e.spec.name + " d" + std::to_string(n + 1) + "d" +
                                           std::to_string(n) + " index " + std::to_string(m.index));
      }
    }
    for (const Word& r : p.relators()) {
      GroupRingElement sum;
      for (int g = 0; g < p.generator_count(); ++g) {
        sum += fox_derivative(r, g, p.generator_count()) *
               (GroupRingElement(Word{letter_of(g)}) - GroupRingElement(Rational(1)));
      }
      o.require(sum == GroupRingElement(r) - GroupRingElement(Rational(1)),
                e.spec.name + " Fox identity for " + p.format(r));
    }
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const LoadedExperiment e = experiment("zmod3_certificate.json");
  const Presentation& p = e.spec.presentation;
  std::vector<Representation> reps;
  for (const auto& m : e.chain.members) reps.push_back(m.rep);
  for (const auto& [name, cert] : e.spec.certificates) {
    const CertificateVerdict v = verify_certificate(p, cert);
    if (name == "gap-5-tampered") {
      o.require(!v.valid && !v.residual.is_zero(), "tamper accepted");
      continue;
    }
    o.require(v.valid, name + " rejected");
    if (!v.valid) continue;
    const GapClaim claim = certificate_gap_claim(p, cert);
    if (name == "gap-6") o.require(claim.kind == "spectral-gap" && *claim.epsilon == 6, "gap-6 claim");
    if (name == "laplacian-sum-of-squares") o.require(claim.kind == "psd-only", "sos claim");
    for (const auto& row : soundness_cross_check(cert, claim, reps, kSoundnessSlack)) {
      o.require(row.holds, name + " soundness on " + row.representation);
    }
  }
  o.require(e.spec.certificates.size() == 3, "expected three certificates");
  return o;
}

// d's prime factors all divide the product of the orders.
bool lambda_oracle(long d, const std::vector<long>& orders) {
  long product_primes = 1;
  for (long q : orders) product_primes *= q;
  for (long f = 2; f <= d; ++f) {
    if (d % f != 0) continue;
    bool prime = true;
    for (long k = 2; k * k <= f; ++k) prime = prime && f % k != 0;
    if (prime && product_primes % f != 0) return false;
  }
  return true;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::vector<long>> order_sets = {{}, {2}, {3}, {2, 3}, {4}, {5, 7}, {6, 10}, {12}, {2, 3, 5, 7}, {11, 13}};
  long cases = 0;
  for (const auto& orders : order_sets) {
    for (long d = 1; d <= 100; ++d) {
      for (long num = -d; num <= d; ++num) {
        if (std::gcd(num, d) != 1) continue;
        ++cases;
        if (lambda_ring_membership(Rational(num, d), orders) != lambda_oracle(d, orders)) {
          o.require(false, "membership of " + std::to_string(num) + "/" + std::to_string(d));
        }
      }
    }
  }
  int limits = 0;
  for (const char* file : {"free2.json", "genus2.json"}) {  // the torsion-free entries
    const LoadedExperiment e = experiment(file);
    for (int n : e.spec.degrees) {
      const LuckReport l = luck_approximation(e.complex, n, e.chain);
      ++limits;
      o.require(denominator(l.extrapolated_limit) == 1,
                e.spec.name + " limit " + to_string(l.extrapolated_limit));
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " membership cases, " + std::to_string(limits) + " limits";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const LoadedExperiment z5 = experiment("zmod5.json");
  const UpperBoundReport r5 = l2_betti_upper_bounds(z5.complex, z5.spec.upper_bound_degree, z5.spec.upper_bounds);
  const double last = to_double(r5.upper.back());
  o.require(std::abs(last - 0.2) <= kBoundTarget, "Z/5 reaches " + str(last));

  const CochainComplexSpec f2 = build_complex(free_group(2));
  UpperBoundOptions opts;
  opts.max_power = 12;
  const UpperBoundReport r = l2_betti_upper_bounds(f2, 1, opts);
  o.require(r.norm_bound == l1_row_bound(build_laplacian(f2, 1).full), "R is not the l1 bound");
  o.require(r.upper.size() == 12 && !r.cutoff, "F2 sequence truncated");
  for (std::size_t i = 0; i < r.upper.size(); ++i) {
    o.require(to_double(r.upper[i]) >= 1 - kBoundFloor, "term below 1 at M=" + std::to_string(i + 1));
    if (i > 0) o.require(r.upper[i] <= r.upper[i - 1], "increase at M=" + std::to_string(i + 1));
  }
  if (o.pass) o.detail = "Z/5 u=" + str(last) + ", F2 u12=" + str(to_double(r.upper.back()));
  return o;
}

}  // namespace

int main() {
  const std::vector<LoadedExperiment> all = corpus();
  struct Criterion {
    int number;
    std::string title;
    double budget;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "free-group Betti numbers and Lück ratios", kBudget1, criterion1},
      {2, "free-group trace discrepancy", kBudget2, criterion2},
      {3, "genus-2 surface complex", kBudget3, criterion3},
      {4, "Hodge dimension count", 0, [&] { return criterion4(all); }},
      {5, "projection algebra", 0, [&] { return criterion5(all); }},
      {6, "chain complex and Fox identities", 0, [&] { return criterion6(all); }},
      {7, "certificate verifier", kBudget7, criterion7},
      {8, "Lambda ring membership and integral limits", 0, criterion8},
      {9, "trace upper bounds", kBudget9, criterion9},
  };
  bool all_pass = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.require(false, std::string("exception: ") + ex.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && seconds > c.budget) o.require(false, "over budget of " + str(c.budget) + " s");
    all_pass = all_pass && o.pass;
    std::printf("criterion %d %s: %s (%.3f s)%s%s\n", c.number, c.title.c_str(),
                o.pass ? "PASS" : "FAIL", seconds, o.detail.empty() ? "" : " ", o.detail.c_str());
  }
  return all_pass ? 0 : 1;
}
