#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "speclab/cli.hpp"
#include "speclab/io.hpp"

namespace fs = std::filesystem;
using namespace speclab;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("speclab_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "speclab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config errors exit with 2") {
  const fs::path dir = scratch_dir("errors");
  CHECK(run({"report", "--config", (dir / "missing.json").string()}) == 2);
  CHECK(run({"report", "--config", write_config(dir, "bad.json", "{ not json").string()}) == 2);
  CHECK(run({"report", "--config", write_config(dir, "nodomain.json", R"({"mesh_h":0.02})").string()}) == 2);
  CHECK(run({"verify", "nonsense"}) == 2);
  CHECK(run({"sweep", "--out", dir.string(), "--config",
             write_config(dir, "empty.json", R"({"family":{"kind":"unit_ellipse","values":[]}})").string()}) == 2);
  CHECK(run({"frobnicate"}) == 2);
}

TEST_CASE("report on the unit ball") {
  const fs::path dir = scratch_dir("report");
  const fs::path cfg = write_config(dir, "ball.json", R"({"domain":{"shape":"disk"},"mesh_h":0.04})");
  REQUIRE(run({"report", "--config", cfg.string(), "--out", dir.string()}) == 0);
  const Json r = Json::parse(slurp(dir / "report.json"));
  CHECK(std::abs(r["sv_deficit"].get<double>()) < 1e-3);
  CHECK(r["beta_sq"].get<double>() < 1e-10);
  CHECK(r["asymmetry"].get<double>() <= 2e-3);
}

TEST_CASE("sweep output is deterministic and ordered") {
  const fs::path dir = scratch_dir("sweep");
  const fs::path cfg = write_config(dir, "sweep.json", R"({
    "family": {"kind": "unit_ellipse", "values": [0.1, 0.05, 0.2]},
    "mesh_h": 0.05, "output": "a.csv"})");
  REQUIRE(run({"sweep", "--config", cfg.string(), "--out", dir.string(), "--jobs", "1"}) == 0);
  const std::string one = slurp(dir / "a.csv");
  REQUIRE(run({"sweep", "--config", cfg.string(), "--out", (dir / "b").string(), "--jobs", "3"}) == 0);
  CHECK(one == slurp(dir / "b" / "a.csv"));
  CHECK(one.rfind("index,param,volume,torsion,sv_deficit", 0) == 0);
  CHECK(one.find("\n0,0.1,") != std::string::npos);
  CHECK(one.find("\n2,0.2,") != std::string::npos);
}

TEST_CASE("sweep flags failing points") {
  const fs::path dir = scratch_dir("sweepfail");
  const fs::path cfg = write_config(dir, "sat.json", R"({
    "family": {"kind": "satellites_closed", "n": 3, "p": 1.2, "values": [0.01, 0.9]}})");
  REQUIRE(run({"sweep", "--config", cfg.string(), "--out", dir.string()}) == 0);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.find(",ok\n") != std::string::npos);
  CHECK(csv.find("satellite_example") != std::string::npos);
}

TEST_CASE("optimize") {
  const fs::path dir = scratch_dir("optimize");
  SUBCASE("tau above the cap") {
    const fs::path cfg = write_config(dir, "cap.json", R"({"domain":{"shape":"disk"},"params":{"tau":1.0}})");
    CHECK(run({"optimize", "--config", cfg.string(), "--out", dir.string()}) == 2);
  }
  SUBCASE("ball start") {
    const fs::path cfg = write_config(dir, "ball.json",
                                      R"({"domain":{"shape":"disk"},"mesh_h":0.02,"params":{"tau":0.001,"a":0.1}})");
    REQUIRE(run({"optimize", "--config", cfg.string(), "--out", dir.string()}) == 0);
    const std::string trace = slurp(dir / "trace.csv");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 2);
    CHECK(fs::exists(dir / "final_domain.json"));
    CHECK(fs::exists(dir / "boundaries.csv"));
  }
}
