#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hkp_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(HKP_CLI_PATH) + " " + args + " --out-dir " + out.string() +
                          " > " + (out / "stdout.txt").string() + " 2> " +
                          (out / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string data(const std::string& file) { return std::string(HKP_DATA_DIR) + "/" + file; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json read_json(const fs::path& path) { return nlohmann::json::parse(slurp(path)); }

fs::path write_spec(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "spec.json";
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("betti on the free group writes all report files") {
  const fs::path out = scratch("betti");
  REQUIRE(run("betti " + data("free2.json"), out) == 0);
  CHECK(fs::exists(out / "betti.json"));
  CHECK(fs::exists(out / "betti.meta.json"));
  const std::string csv = slurp(out / "betti.csv");
  CHECK(csv.rfind("quotient_index,group_index,degree,kernel_dim,gap,ratio_num,ratio_den\n", 0) == 0);
  CHECK(csv.find("\n0,4,1,5,") != std::string::npos);
  CHECK(csv.find("\n3,25,1,26,") != std::string::npos);
  CHECK(read_json(out / "betti.meta.json")["status"] == "ok");
  CHECK(read_json(out / "stdout.txt") == read_json(out / "betti.json"));
}

TEST_CASE("repeat runs are byte-identical") {
  const fs::path a = scratch("repeat_a");
  const fs::path b = scratch("repeat_b");
  REQUIRE(run("luck " + data("free2.json"), a) == 0);
  REQUIRE(run("luck " + data("free2.json") + " --threads 2", b) == 0);
  CHECK(slurp(a / "luck.json") == slurp(b / "luck.json"));
  CHECK(slurp(a / "luck.csv") == slurp(b / "luck.csv"));
}

TEST_CASE("certificate verification from the command line") {
  const fs::path out = scratch("cert");
  REQUIRE(run("verify-cert " + data("zmod3_certificate.json"), out) == 0);
  const std::string csv = slurp(out / "verify-cert.csv");
  CHECK(csv.find("gap-6,true,spectral-gap") != std::string::npos);
  CHECK(csv.find("gap-5-tampered,false") != std::string::npos);
  CHECK(csv.find("laplacian-sum-of-squares,true,psd-only") != std::string::npos);
}

TEST_CASE("surface obstruction report") {
  const fs::path out = scratch("genus2");
  REQUIRE(run("obstruct " + data("genus2.json"), out) == 0);
  const auto j = read_json(out / "obstruct.json");
  bool saw_degree2 = false;
  for (const auto& r : j["results"]) {
    if (r["degree"] == 2) {
      saw_degree2 = true;
      CHECK(r["verdict"] == "persistent-discrepancy");
    }
  }
  CHECK(saw_degree2);
  CHECK(slurp(out / "stderr.txt").find("warning") != std::string::npos);
}

TEST_CASE("exit codes separate bad input from failed computation") {
  const fs::path out = scratch("codes");
  CHECK(run("betti " + data("free2.json") + " --max-cosets 8", out) == 1);
  CHECK(fs::exists(out / "betti.error.json"));
  CHECK(read_json(out / "betti.error.json")["error"]["kind"] == "enumeration-overflow");

  const fs::path bad = write_spec(out, "{\"builtin\": \"free:2\",");
  CHECK(run("betti " + bad.string(), out) == 2);
  const fs::path unknown = write_spec(out, R"({"builtin": "free:2", "chian": []})");
  CHECK(run("betti " + unknown.string(), out) == 2);
  CHECK(run("frobnicate " + data("free2.json"), out) == 2);
  CHECK(run("euler " + data("zmod5.json"), out) == 2);
  CHECK(run("bounds " + data("genus2.json"), out) == 1);
}
