#pragma once

// JSON experiment files and the reports produced from them.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hkp/certificate.hpp"
#include "hkp/complex.hpp"
#include "hkp/coset_enum.hpp"
#include "hkp/pipeline.hpp"

namespace hkp {

using Json = nlohmann::ordered_json;

struct NamedCertificate {
  std::string name;
  Certificate certificate;
};

struct ExperimentSpec {
  std::string name;
  Presentation presentation{{"a"}, {}};
  bool complete = false;
  std::vector<HigherDifferential> higher;
  std::vector<std::vector<Word>> chain;
  std::vector<int> degrees;
  PipelineOptions options;
  std::optional<BetaReference> beta_ref;
  ProjectionKind projection = ProjectionKind::full;
  UpperBoundOptions upper_bounds;
  int upper_bound_degree = 0;
  std::vector<NamedCertificate> certificates;
  std::vector<long> finite_subgroup_orders;
};

/// Throws InputError on any schema violation.
ExperimentSpec parse_experiment(const Json& j);
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// A matrix given as a single element string (1×1) or as rows of strings.
GroupRingMatrix parse_matrix(const Json& j, const Presentation& p);

struct RunSettings {
  int ball_radius = kDefaultBallRadius;
  long max_cosets = kDefaultMaxCosets;
};

/// Experiment with its quotient chain enumerated and its complex validated
/// against every chain member.
struct LoadedExperiment {
  ExperimentSpec spec;
  CochainComplexSpec complex;
  QuotientChain chain;
};

LoadedExperiment load(ExperimentSpec spec, const RunSettings& settings = {});

struct Report {
  Json json;
  std::string csv;
};

inline const std::vector<std::string> kCommands = {
    "spectrum", "betti", "luck", "project", "obstruct", "euler", "ghost", "verify-cert", "bounds"};

/// Runs one command. Throws InputError for an unknown command or missing
/// experiment fields and ComputationError on computational failure.
Report run_command(const std::string& command, const LoadedExperiment& e);

/// Machine-readable error record.
Json error_json(const std::string& kind, const std::string& message);

}  // namespace hkp
