// hkp <command> <experiment.json> [flags]
//
// Writes <command>.json, <command>.csv and <command>.meta.json to --out-dir
// and prints the JSON report. Exit codes: 0 success, 1 computational
// failure (an error record is written instead), 2 malformed input.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "hkp/errors.hpp"
#include "hkp/experiment.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hkp::InputError("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-ring Laplacians, spectral projections and l2-Betti approximations"};
  std::string command;
  std::string spec_path;
  std::optional<double> tol;
  long max_cosets = hkp::kDefaultMaxCosets;
  int ball_radius = hkp::kDefaultBallRadius;
  int threads = 1;
  std::string out_dir = ".";

  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(hkp::kCommands));
  app.add_option("spec", spec_path, "Experiment JSON file")->required();
  app.add_option("--tol", tol, "Zero-cluster tolerance (overrides the experiment)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-cosets", max_cosets, "Coset enumeration limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--ball-radius", ball_radius, "Radius of the separation check")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", threads, "Worker threads across quotients")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-dir", out_dir, "Directory for report files");
  app.set_version_flag("--version", kVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const fs::path out(out_dir);
  const auto started = std::chrono::steady_clock::now();
  hkp::Json meta{{"command", command},
                 {"spec", spec_path},
                 {"version", kVersion},
                 {"threads", threads},
                 {"max_cosets", max_cosets},
                 {"ball_radius", ball_radius}};
  auto finish_meta = [&](const std::string& status) {
    meta["status"] = status;
    meta["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_file(out / (command + ".meta.json"), meta.dump(2) + "\n");
  };

  try {
    fs::create_directories(out);
    hkp::ExperimentSpec spec = hkp::load_experiment(spec_path);
    if (tol) spec.options.zero_tolerance = *tol;
    spec.options.threads = threads;
    const hkp::LoadedExperiment e =
        hkp::load(std::move(spec), hkp::RunSettings{ball_radius, max_cosets});
    const hkp::Report report = hkp::run_command(command, e);
    const std::string text = report.json.dump(2) + "\n";
    write_file(out / (command + ".json"), text);
    write_file(out / (command + ".csv"), report.csv);
    finish_meta("ok");
    for (const auto& w : e.chain.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << text;
    return 0;
  } catch (const hkp::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    const std::string text = hkp::error_json("malformed-input", e.what()).dump(2) + "\n";
    std::cout << text;
    return 2;
  } catch (const hkp::ComputationError& e) {
    std::cerr << "computation error (" << e.kind() << "): " << e.what() << "\n";
    const std::string text = hkp::error_json(e.kind(), e.what()).dump(2) + "\n";
    try {
      write_file(out / (command + ".error.json"), text);
      finish_meta("error");
    } catch (const std::exception&) {
    }
    std::cout << text;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << hkp::error_json("internal", e.what()).dump(2) << "\n";
    return 1;
  }
}
