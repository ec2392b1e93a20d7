#include "hkp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hkp/errors.hpp"
#include "hkp/parallel.hpp"

namespace hkp {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(where + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) throw InputError(where + ": unknown key \"" + k + "\"");
  }
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

long as_integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<long>();
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError(where + ": expected a rational as \"p/q\" or an integer");
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  return j;
}

Presentation builtin_presentation(const std::string& name, bool& complete) {
  const auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  int arg = 0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      arg = std::stoi(name.substr(colon + 1), &used);
      if (used != name.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("builtin \"" + name + "\": bad parameter");
    }
  }
  if (kind == "surface" && arg >= 1) {
    complete = true;
    return surface_group(arg);
  }
  if (kind == "free" && arg >= 1) {
    complete = true;
    return free_group(arg);
  }
  if (kind == "cyclic" && arg >= 1) {
    complete = false;
    return cyclic_group(arg);
  }
  if (kind == "trivial" && colon == std::string::npos) {
    // The disk ⟨a | a⟩ is an aspherical complex for the trivial group.
    complete = true;
    return Presentation({"a"}, {Word{letter_of(0)}});
  }
  throw InputError("unknown builtin \"" + name +
                   "\" (expected surface:g, free:n, cyclic:m or trivial)");
}

Json rational_json(const Rational& q) { return to_string(q); }

Json double_json(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string csv_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json gap_json(const GapReport& g) {
  Json lowest = Json::array();
  for (double v : g.lowest) lowest.push_back(v);
  return Json{{"kernel_dim", g.kernel_dim},
              {"gap", double_json(g.gap)},
              {"zero_tolerance", g.zero_tolerance},
              {"threshold", g.threshold},
              {"resolved", g.resolved},
              {"lowest", lowest}};
}

Json matrix_json(const GroupRingMatrix& m, const Presentation& p) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(p.format(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json header(const std::string& command, const LoadedExperiment& e) {
  const auto& p = e.spec.presentation;
  Json relators = Json::array();
  for (const auto& r : p.relators()) relators.push_back(p.format(r));
  Json chain = Json::array();
  for (const auto& m : e.chain.members) {
    Json extra = Json::array();
    for (const auto& w : m.extra_relators) extra.push_back(p.format(w));
    chain.push_back(Json{{"relators", extra}, {"index", m.index}});
  }
  Json sep{{"radius", e.chain.separation.radius}, {"separated", e.chain.separation.separated}};
  if (e.chain.separation.witness) sep["witness"] = p.format(*e.chain.separation.witness);
  return Json{{"command", command},
              {"experiment", e.spec.name},
              {"tolerances",
               {{"zero", e.spec.options.zero_tolerance},
                {"projection", e.spec.options.projection_tolerance}}},
              {"laplacian_weight", to_string(kLaplacianWeight)},
              {"presentation", {{"generators", p.generator_names()}, {"relators", relators}}},
              {"complex",
               {{"cells", e.complex.cell_counts},
                {"source", e.complex.source},
                {"complete", e.complex.complete}}},
              {"chain", chain},
              {"separation", sep},
              {"warnings", e.chain.warnings}};
}

std::vector<int> degrees_of(const LoadedExperiment& e) {
  if (!e.spec.degrees.empty()) return e.spec.degrees;
  std::vector<int> all;
  for (int n = 0; n <= e.complex.top_degree(); ++n) all.push_back(n);
  return all;
}

void require_chain(const LoadedExperiment& e, const std::string& command) {
  if (e.chain.members.empty()) {
    throw InputError("command \"" + command + "\" needs a nonempty \"chain\"");
  }
}

std::optional<GapClaim> first_gap_claim(const LoadedExperiment& e, int degree) {
  for (const auto& nc : e.spec.certificates) {
    if (nc.certificate.degree != degree) continue;
    if (!verify_certificate(e.spec.presentation, nc.certificate).valid) continue;
    GapClaim claim = certificate_gap_claim(e.spec.presentation, nc.certificate);
    if (claim.kind == "spectral-gap") return claim;
  }
  return std::nullopt;
}

Json claim_json(const GapClaim& c) {
  Json j{{"group", c.group}, {"kind", c.kind}, {"scope", c.scope}};
  j["degree"] = c.degree ? Json(*c.degree) : Json(nullptr);
  j["epsilon"] = c.epsilon ? rational_json(*c.epsilon) : Json(nullptr);
  return j;
}

Report run_spectrum(const LoadedExperiment& e) {
  require_chain(e, "spectrum");
  Json j = header("spectrum", e);
  std::ostringstream csv;
  csv << "quotient_index,group_index,degree,laplacian,kernel_dim,gap,resolved\n";
  Json results = Json::array();
  for (int n : degrees_of(e)) {
    const LaplacianBundle lap = build_laplacian(e.complex, n);
    const auto& members = e.chain.members;
    auto rows = parallel_map(members.size(), e.spec.options.threads, [&](std::size_t i) {
      const auto& rep = members[i].rep;
      std::vector<GapReport> g;
      for (const auto* m : {&lap.full, &lap.plus, &lap.minus}) {
        g.push_back(spectral_gap(evaluate(*m, rep, rep.label()), e.spec.options.zero_tolerance,
                                 e.spec.options.spectral));
      }
      return g;
    });
    for (std::size_t i = 0; i < members.size(); ++i) {
      const char* names[] = {"full", "plus", "minus"};
      Json entry{{"quotient_index", i}, {"group_index", members[i].index}, {"degree", n}};
      for (int k = 0; k < 3; ++k) {
        const GapReport& g = rows[i][static_cast<std::size_t>(k)];
        entry[names[k]] = gap_json(g);
        csv << i << ',' << members[i].index << ',' << n << ',' << names[k] << ','
            << g.kernel_dim << ',' << csv_double(g.gap) << ',' << (g.resolved ? "true" : "false")
            << '\n';
      }
      results.push_back(entry);
    }
  }
  j["results"] = results;
  return {j, csv.str()};
}

Report run_betti(const LoadedExperiment& e, bool luck) {
  const std::string command = luck ? "luck" : "betti";
  require_chain(e, command);
  Json j = header(command, e);
  std::ostringstream csv;
  csv << "quotient_index,group_index,degree,kernel_dim,gap,ratio_num,ratio_den\n";
  Json results = Json::array();
  for (int n : degrees_of(e)) {
    const LuckReport r = luck_approximation(e.complex, n, e.chain, e.spec.options);
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto& row = r.rows[i];
      const Rational& q = r.ratios[i];
      rows.push_back(Json{{"quotient_index", i},
                          {"group_index", row.index},
                          {"betti", row.betti},
                          {"gap", double_json(row.gap.gap)},
                          {"ratio", rational_json(q)}});
      csv << i << ',' << row.index << ',' << n << ',' << row.betti << ','
          << csv_double(row.gap.gap) << ',' << numerator(q).str() << ','
          << denominator(q).str() << '\n';
    }
    Json entry{{"degree", n}, {"rows", rows}};
    if (luck) {
      entry["cauchy_tail"] = r.cauchy_tail ? rational_json(*r.cauchy_tail) : Json(nullptr);
      entry["extrapolated_limit"] = rational_json(r.extrapolated_limit);
      entry["limit_is_integer"] = denominator(r.extrapolated_limit) == 1;
      entry["limit_in_lambda_ring"] =
          lambda_ring_membership(r.extrapolated_limit, e.spec.finite_subgroup_orders);
      entry["finite_subgroup_orders"] = e.spec.finite_subgroup_orders;
      entry["status"] = "estimate";
    }
    results.push_back(entry);
  }
  j["results"] = results;
  return {j, csv.str()};
}

Report run_project(const LoadedExperiment& e) {
  require_chain(e, "project");
  Json j = header("project", e);
  std::ostringstream csv;
  csv << "quotient_index,group_index,degree,trace_full,trace_plus,trace_minus,"
         "idempotency_defect,factorization_defect,heat_distance,residual,gap,rank_check,hodge\n";
  Json results = Json::array();
  for (int n : degrees_of(e)) {
    const auto& members = e.chain.members;
    auto rows = parallel_map(members.size(), e.spec.options.threads, [&](std::size_t i) {
      return higher_kazhdan_projection(e.complex, n, members[i].rep, e.spec.options);
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& k = rows[i];
      const double idem = std::max({k.full.idempotency_defect, k.plus.idempotency_defect,
                                    k.minus.idempotency_defect});
      results.push_back(Json{
          {"quotient_index", i},
          {"group_index", members[i].index},
          {"degree", n},
          {"trace", {{"full", k.full.trace()}, {"plus", k.plus.trace()}, {"minus", k.minus.trace()}}},
          {"kernel_dim",
           {{"full", k.gap_full.kernel_dim},
            {"plus", k.gap_plus.kernel_dim},
            {"minus", k.gap_minus.kernel_dim}}},
          {"gap",
           {{"full", double_json(k.gap_full.gap)},
            {"plus", double_json(k.gap_plus.gap)},
            {"minus", double_json(k.gap_minus.gap)}}},
          {"idempotency_defect", idem},
          {"symmetry_defect", std::max({k.full.symmetry_defect, k.plus.symmetry_defect,
                                        k.minus.symmetry_defect})},
          {"factorization_defect", k.factorization_defect},
          {"heat_distance", k.heat_distance},
          {"laplacian_residual", k.laplacian_residual},
          {"rank", {{"d", k.rank_d}, {"d_prev", k.rank_d_prev}, {"check", k.rank_check}}},
          {"hodge",
           {{"kernel_plus", k.hodge.kernel_plus},
            {"kernel_minus", k.hodge.kernel_minus},
            {"cochain_dim", k.hodge.cochain_dim},
            {"kernel_full", k.hodge.kernel_full},
            {"holds", k.hodge.holds()}}}});
      csv << i << ',' << members[i].index << ',' << n << ',' << csv_double(k.full.trace()) << ','
          << csv_double(k.plus.trace()) << ',' << csv_double(k.minus.trace()) << ','
          << csv_double(idem) << ',' << csv_double(k.factorization_defect) << ','
          << csv_double(k.heat_distance) << ',' << csv_double(k.laplacian_residual) << ','
          << csv_double(k.gap_full.gap) << ',' << (k.rank_check ? "true" : "false") << ','
          << (k.hodge.holds() ? "true" : "false") << '\n';
    }
  }
  j["results"] = results;
  return {j, csv.str()};
}

Report run_obstruct(const LoadedExperiment& e) {
  require_chain(e, "obstruct");
  if (!e.spec.beta_ref) throw InputError("command \"obstruct\" needs \"beta_ref\"");
  Json j = header("obstruct", e);
  std::ostringstream csv;
  csv << "quotient_index,group_index,degree,d_star_value,lifted_value,discrepancy,gap\n";
  Json results = Json::array();
  for (int n : degrees_of(e)) {
    const ObstructionReport r = box_obstruction_report(e.complex, n, e.chain, *e.spec.beta_ref,
                                                       first_gap_claim(e, n), e.spec.options);
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto& row = r.rows[i];
      rows.push_back(Json{{"quotient_index", i},
                          {"group_index", row.index},
                          {"d_star_value", row.d_star_value},
                          {"lifted_value", rational_json(row.lifted_value)},
                          {"discrepancy", rational_json(row.discrepancy)},
                          {"gap", double_json(row.gap)}});
      csv << i << ',' << row.index << ',' << n << ',' << row.d_star_value << ','
          << to_string(row.lifted_value) << ',' << to_string(row.discrepancy) << ','
          << csv_double(row.gap) << '\n';
    }
    results.push_back(Json{
        {"degree", n},
        {"beta_ref",
         {{"value", rational_json(r.beta_ref.value)},
          {"provenance", r.beta_ref.provenance},
          {"citation", r.beta_ref.citation}}},
        {"rows", rows},
        {"verdict", r.verdict},
        {"min_gap", double_json(r.min_gap)},
        {"gap_decay", r.gap_decay},
        {"gap_status", r.gap_status},
        {"gap_claim", r.gap_claim ? claim_json(*r.gap_claim) : Json(nullptr)},
        {"assembly_obstruction", r.assembly_obstruction},
        {"notes", r.notes}});
  }
  j["results"] = results;
  return {j, csv.str()};
}

Report run_euler(const LoadedExperiment& e) {
  require_chain(e, "euler");
  Json j = header("euler", e);
  const EulerReport r = euler_class_trace(e.complex, e.chain, e.spec.options);
  std::ostringstream csv;
  csv << "quotient_index,group_index";
  for (int n = 0; n <= e.complex.top_degree(); ++n) csv << ",betti_" << n;
  csv << ",trace\n";
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    rows.push_back(Json{{"quotient_index", i},
                        {"group_index", row.index},
                        {"betti", row.betti},
                        {"trace", rational_json(row.trace)}});
    csv << i << ',' << row.index;
    for (long b : row.betti) csv << ',' << b;
    csv << ',' << to_string(row.trace) << '\n';
  }
  j["results"] = Json{{"cell_characteristic", rational_json(r.cell_characteristic)},
                      {"rows", rows},
                      {"multiplicative", r.multiplicative}};
  return {j, csv.str()};
}

Report run_ghost(const LoadedExperiment& e) {
  require_chain(e, "ghost");
  Json j = header("ghost", e);
  std::ostringstream csv;
  csv << "quotient_index,group_index,degree,projection,max_entry\n";
  Json results = Json::array();
  for (int n : degrees_of(e)) {
    const GhostReport r =
        ghost_diagnostic(e.complex, n, e.chain, e.spec.projection, e.spec.options);
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.indices.size(); ++i) {
      rows.push_back(Json{{"quotient_index", i},
                          {"group_index", r.indices[i]},
                          {"max_entry", r.max_entries[i]}});
      csv << i << ',' << r.indices[i] << ',' << n << ',' << to_string(r.kind) << ','
          << csv_double(r.max_entries[i]) << '\n';
    }
    results.push_back(Json{{"degree", n},
                           {"projection", to_string(r.kind)},
                           {"rows", rows},
                           {"ghost_like", r.ghost_like}});
  }
  j["results"] = results;
  return {j, csv.str()};
}

Report run_verify(const LoadedExperiment& e) {
  if (e.spec.certificates.empty()) {
    throw InputError("command \"verify-cert\" needs \"certificates\"");
  }
  Json j = header("verify-cert", e);
  std::vector<Representation> reps;
  for (const auto& m : e.chain.members) reps.push_back(m.rep);
  std::ostringstream csv;
  csv << "certificate,valid,claim,epsilon,soundness\n";
  Json results = Json::array();
  for (const auto& nc : e.spec.certificates) {
    const auto& p = e.spec.presentation;
    const CertificateVerdict v = verify_certificate(p, nc.certificate);
    Json entry{{"name", nc.name}, {"valid", v.valid}};
    std::string claim_kind = "none";
    std::string eps;
    std::string sound = "n/a";
    if (v.valid) {
      const GapClaim claim = certificate_gap_claim(p, nc.certificate);
      entry["claim"] = claim_json(claim);
      claim_kind = claim.kind;
      if (claim.epsilon) eps = to_string(*claim.epsilon);
      if (claim.kind != "none" && !reps.empty()) {
        Json rows = Json::array();
        bool all = true;
        for (const auto& s : soundness_cross_check(nc.certificate, claim, reps)) {
          rows.push_back(Json{{"representation", s.representation},
                              {"min_eigenvalue", s.min_eigenvalue},
                              {"min_nonzero", double_json(s.min_nonzero)},
                              {"holds", s.holds}});
          all = all && s.holds;
        }
        entry["soundness"] = rows;
        sound = all ? "true" : "false";
      }
    } else {
      entry["residual"] = matrix_json(v.residual, p);
    }
    results.push_back(entry);
    csv << nc.name << ',' << (v.valid ? "true" : "false") << ',' << claim_kind << ',' << eps
        << ',' << sound << '\n';
  }
  j["results"] = results;
  return {j, csv.str()};
}

Report run_bounds(const LoadedExperiment& e) {
  Json j = header("bounds", e);
  const UpperBoundReport r =
      l2_betti_upper_bounds(e.complex, e.spec.upper_bound_degree, e.spec.upper_bounds);
  std::ostringstream csv;
  csv << "power,upper,upper_float,lower\n";
  Json upper = Json::array();
  Json lower = Json::array();
  for (std::size_t m = 0; m < r.upper.size(); ++m) {
    upper.push_back(rational_json(r.upper[m]));
    csv << m + 1 << ',' << to_string(r.upper[m]) << ',' << csv_double(to_double(r.upper[m]))
        << ',';
    if (m < r.lower.size()) {
      lower.push_back(r.lower[m]);
      csv << csv_double(r.lower[m]);
    }
    csv << '\n';
  }
  j["results"] = Json{{"degree", r.degree},
                      {"norm_bound", rational_json(r.norm_bound)},
                      {"trace_mode", r.trace_mode},
                      {"gap_hint", e.spec.upper_bounds.gap_hint
                                       ? Json(*e.spec.upper_bounds.gap_hint)
                                       : Json(nullptr)},
                      {"upper", upper},
                      {"lower", lower},
                      {"cutoff", r.cutoff}};
  return {j, csv.str()};
}

}  // namespace

GroupRingMatrix parse_matrix(const Json& j, const Presentation& p) {
  if (j.is_string()) return GroupRingMatrix::scalar(p.parse_element(j.get<std::string>()));
  if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
    throw InputError("matrix: expected an element string or a nonempty array of rows");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.front().size());
  GroupRingMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw InputError("matrix: row " + std::to_string(i) + " does not have " +
                       std::to_string(cols) + " entries");
    }
    for (int k = 0; k < cols; ++k) {
      m(i, k) = p.parse_element(as_string(row.at(static_cast<std::size_t>(k)), "matrix entry"));
    }
  }
  return m;
}

ExperimentSpec parse_experiment(const Json& j) {
  reject_unknown(j,
                 {"name", "builtin", "presentation", "complete", "higher_codifferentials", "chain",
                  "degrees", "tolerances", "beta_ref", "projection", "upper_bounds",
                  "certificates", "finite_subgroup_orders"},
                 "experiment");
  ExperimentSpec s;
  s.name = j.contains("name") ? as_string(j.at("name"), "name") : "";

  if (j.contains("builtin") == j.contains("presentation")) {
    throw InputError("experiment: give exactly one of \"builtin\" and \"presentation\"");
  }
  if (j.contains("builtin")) {
    s.presentation = builtin_presentation(as_string(j.at("builtin"), "builtin"), s.complete);
  } else {
    const Json& pj = j.at("presentation");
    reject_unknown(pj, {"generators", "relators", "aspherical"}, "presentation");
    std::vector<std::string> names;
    for (const auto& g : as_array(require(pj, "generators", "presentation"), "generators")) {
      names.push_back(as_string(g, "generator"));
    }
    std::vector<Word> relators;
    if (pj.contains("relators")) {
      for (const auto& r : as_array(pj.at("relators"), "relators")) {
        relators.push_back(parse_word(as_string(r, "relator"), names));
      }
    }
    s.presentation = Presentation(std::move(names), std::move(relators));
    if (pj.contains("aspherical")) {
      if (!pj.at("aspherical").is_boolean()) throw InputError("aspherical: expected a boolean");
      s.complete = pj.at("aspherical").get<bool>();
    }
  }
  if (j.contains("complete")) {
    if (!j.at("complete").is_boolean()) throw InputError("complete: expected a boolean");
    s.complete = j.at("complete").get<bool>();
  }
  const Presentation& p = s.presentation;

  if (j.contains("higher_codifferentials")) {
    for (const auto& h : as_array(j.at("higher_codifferentials"), "higher_codifferentials")) {
      reject_unknown(h, {"degree", "matrix"}, "higher codifferential");
      const long deg = as_integer(require(h, "degree", "higher codifferential"), "degree");
      if (deg < 2) throw InputError("higher codifferentials start at degree 2");
      s.higher.push_back(HigherDifferential{static_cast<int>(deg),
                                            parse_matrix(require(h, "matrix", "higher"), p)});
    }
  }
  if (j.contains("chain")) {
    for (const auto& member : as_array(j.at("chain"), "chain")) {
      std::vector<Word> extra;
      for (const auto& w : as_array(member, "chain member")) {
        extra.push_back(p.parse_word(as_string(w, "chain relator")));
      }
      s.chain.push_back(std::move(extra));
    }
  }
  if (j.contains("degrees")) {
    for (const auto& d : as_array(j.at("degrees"), "degrees")) {
      const long n = as_integer(d, "degree");
      if (n < 0) throw InputError("degrees must be nonnegative");
      s.degrees.push_back(static_cast<int>(n));
    }
  }
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    reject_unknown(t, {"zero", "projection"}, "tolerances");
    if (t.contains("zero")) s.options.zero_tolerance = as_double(t.at("zero"), "tolerances.zero");
    if (t.contains("projection")) {
      s.options.projection_tolerance = as_double(t.at("projection"), "tolerances.projection");
    }
    if (!(s.options.zero_tolerance > 0) || !(s.options.projection_tolerance > 0)) {
      throw InputError("tolerances must be positive");
    }
  }
  if (j.contains("beta_ref")) {
    const Json& b = j.at("beta_ref");
    reject_unknown(b, {"value", "provenance", "citation"}, "beta_ref");
    BetaReference ref{as_rational(require(b, "value", "beta_ref"), "beta_ref.value"),
                      as_string(require(b, "provenance", "beta_ref"), "beta_ref.provenance"),
                      b.contains("citation") ? as_string(b.at("citation"), "citation") : ""};
    if (ref.provenance != "user-cited" && ref.provenance != "luck-extrapolated") {
      throw InputError("beta_ref.provenance must be \"user-cited\" or \"luck-extrapolated\"");
    }
    if (ref.provenance == "user-cited" && ref.citation.empty()) {
      throw InputError("a user-cited beta_ref needs a citation");
    }
    s.beta_ref = std::move(ref);
  }
  if (j.contains("projection")) {
    s.projection = parse_projection_kind(as_string(j.at("projection"), "projection"));
  }
  if (j.contains("upper_bounds")) {
    const Json& u = j.at("upper_bounds");
    reject_unknown(u, {"degree", "max_power", "norm_bound", "gap_hint", "term_budget", "max_cosets"},
                   "upper_bounds");
    if (u.contains("degree")) s.upper_bound_degree = static_cast<int>(as_integer(u.at("degree"), "degree"));
    if (u.contains("max_power")) {
      s.upper_bounds.max_power = static_cast<int>(as_integer(u.at("max_power"), "max_power"));
    }
    if (u.contains("norm_bound")) s.upper_bounds.norm_bound = as_rational(u.at("norm_bound"), "norm_bound");
    if (u.contains("gap_hint")) s.upper_bounds.gap_hint = as_double(u.at("gap_hint"), "gap_hint");
    if (u.contains("term_budget")) {
      const long b = as_integer(u.at("term_budget"), "term_budget");
      if (b < 1) throw InputError("term_budget must be positive");
      s.upper_bounds.term_budget = static_cast<std::size_t>(b);
    }
    if (u.contains("max_cosets")) s.upper_bounds.max_cosets = as_integer(u.at("max_cosets"), "max_cosets");
  }
  if (j.contains("finite_subgroup_orders")) {
    for (const auto& o : as_array(j.at("finite_subgroup_orders"), "finite_subgroup_orders")) {
      const long v = as_integer(o, "order");
      if (v < 1) throw InputError("finite subgroup orders must be positive");
      s.finite_subgroup_orders.push_back(v);
    }
  }

  if (j.contains("certificates")) {
    // Laplacian targets need the complex, which does not depend on the chain.
    const CochainComplexSpec complex = build_complex(p, s.higher, s.complete);
    int position = 0;
    for (const auto& cj : as_array(j.at("certificates"), "certificates")) {
      const std::string where = "certificate " + std::to_string(position++);
      reject_unknown(cj,
                     {"name", "degree", "target", "epsilon", "polynomial_form", "squares",
                      "ideal_witnesses"},
                     where);
      NamedCertificate nc;
      nc.name = cj.contains("name") ? as_string(cj.at("name"), where + ".name") : where;
      Certificate& c = nc.certificate;
      c.group = s.name;
      const Json& target = require(cj, "target", where);
      if (target.is_object()) {
        reject_unknown(target, {"laplacian"}, where + ".target");
        const int n = static_cast<int>(as_integer(require(target, "laplacian", where), "laplacian"));
        c.target = build_laplacian(complex, n).full;
        c.degree = n;
      } else {
        c.target = parse_matrix(target, p);
      }
      if (cj.contains("degree")) {
        const int n = static_cast<int>(as_integer(cj.at("degree"), where + ".degree"));
        if (c.degree && *c.degree != n) throw InputError(where + ": degree disagrees with target");
        c.degree = n;
      }
      if (cj.contains("epsilon")) c.epsilon = as_rational(cj.at("epsilon"), where + ".epsilon");
      if (cj.contains("polynomial_form")) {
        const Json& f = as_array(cj.at("polynomial_form"), where + ".polynomial_form");
        if (f.size() != 2) throw InputError(where + ": polynomial_form is [c2, c1]");
        c.polynomial_form = PolynomialForm{as_rational(f[0], "c2"), as_rational(f[1], "c1")};
      }
      if (cj.contains("squares")) {
        for (const auto& g : as_array(cj.at("squares"), where + ".squares")) {
          c.squares.push_back(parse_matrix(g, p));
        }
      }
      if (cj.contains("ideal_witnesses")) {
        for (const auto& w : as_array(cj.at("ideal_witnesses"), where + ".ideal_witnesses")) {
          reject_unknown(w, {"left", "relator", "right"}, where + " witness");
          const Json& rel = require(w, "relator", where + " witness");
          int index = -1;
          if (rel.is_number_integer()) {
            index = rel.get<int>();
          } else {
            const Word r = p.parse_word(as_string(rel, "relator"));
            for (std::size_t k = 0; k < p.relators().size(); ++k) {
              if (p.relators()[k] == r) index = static_cast<int>(k);
            }
            if (index < 0) throw InputError(where + ": \"" + rel.get<std::string>() + "\" is not a relator");
          }
          c.ideal_witnesses.push_back(IdealWitness{parse_matrix(require(w, "left", where), p), index,
                                                   parse_matrix(require(w, "right", where), p)});
        }
      }
      effective_form(c);
      s.certificates.push_back(std::move(nc));
    }
  }
  return s;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_experiment(j);
}

LoadedExperiment load(ExperimentSpec spec, const RunSettings& settings) {
  QuotientChain chain;
  if (!spec.chain.empty()) {
    chain = quotient_chain(spec.presentation, spec.chain, settings.ball_radius, settings.max_cosets,
                           spec.options.threads);
  }
  std::vector<Representation> reps;
  for (const auto& m : chain.members) reps.push_back(m.rep);
  CochainComplexSpec complex = build_complex(spec.presentation, spec.higher, spec.complete, reps);
  for (int n : spec.degrees) {
    if (n > complex.top_degree()) {
      throw InputError("degree " + std::to_string(n) + " exceeds the top degree " +
                       std::to_string(complex.top_degree()));
    }
  }
  return LoadedExperiment{std::move(spec), std::move(complex), std::move(chain)};
}

Report run_command(const std::string& command, const LoadedExperiment& e) {
  if (command == "spectrum") return run_spectrum(e);
  if (command == "betti") return run_betti(e, false);
  if (command == "luck") return run_betti(e, true);
  if (command == "project") return run_project(e);
  if (command == "obstruct") return run_obstruct(e);
  if (command == "euler") return run_euler(e);
  if (command == "ghost") return run_ghost(e);
  if (command == "verify-cert") return run_verify(e);
  if (command == "bounds") return run_bounds(e);
  throw InputError("unknown command \"" + command + "\"");
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace hkp
