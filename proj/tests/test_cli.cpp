#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "et6");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = et6::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("et6_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}
}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == et6::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == et6::cli::kExitUsage);
  const fs::path dir = scratch("usage");
  const Result r = run({"run", "--output-dir", dir.string(), "--cfl", "1.5"});
  CHECK(r.code == et6::cli::kExitUsage);
  CHECK(r.err.find("scenario.cfl") != std::string::npos);
  CHECK(run({"eigen", "--D", "3"}).code == et6::cli::kExitUsage);
}

TEST_CASE("eigen prints the equilibrium speeds") {
  const fs::path dir = scratch("eigen");
  const Result r = run({"eigen", "--output-dir", dir.string()});
  CHECK(r.code == et6::cli::kExitPass);
  CHECK(r.out.find("1.2909944") != std::string::npos);
  CHECK(fs::exists(dir / "eigen.csv"));
  CHECK(fs::exists(dir / "eigen_kcondition.csv"));
}

TEST_CASE("relax writes the decay curve") {
  const fs::path dir = scratch("relax");
  const Result r = run({"relax", "--output-dir", dir.string(), "--tau", "0.5"});
  CHECK(r.code == et6::cli::kExitPass);
  std::ifstream f(dir / "relax.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "t,Pi,Pi_exact,abs_err");
  int rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  CHECK(rows > 2);
}

TEST_CASE("run writes snapshots and diagnostics") {
  const fs::path dir = scratch("run");
  const Result r = run({"run", "--output-dir", dir.string(), "--N", "50", "--t-end", "0.02"});
  CHECK(r.code == et6::cli::kExitPass);
  CHECK(fs::exists(dir / "run_diagnostics.csv"));
  CHECK(fs::exists(dir / "run_snapshot_0000.csv"));
}

TEST_CASE("config file and unknown keys") {
  const fs::path dir = scratch("cfg");
  {
    std::ofstream f(dir / "bad.cfg");
    f << "[gas]\nDOF = 5\n";
  }
  const Result r = run({"check", "--config", (dir / "bad.cfg").string(), "--output-dir", dir.string()});
  CHECK(r.code == et6::cli::kExitUsage);
  CHECK(r.err.find("gas.DOF") != std::string::npos);
}

}  // TEST_SUITE
