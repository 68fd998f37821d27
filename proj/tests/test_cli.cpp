#include "doctest.h"

#include "heatctl/commands.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace heatctl;
using namespace heatctl::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("heatctl-test-cli-" + name);
  fs::remove_all(p);
  return p;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

int run_args(std::vector<std::string> args) {
  std::vector<char*> argv;
  static std::string name = "heatctl";
  argv.push_back(name.data());
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

RunConfig small(const std::string& command, const fs::path& out) {
  RunConfig c;
  c.command = command;
  c.modes = 6;
  c.timesteps = 128;
  c.n_list = {2, 4, 8, 16};
  c.out = out.string();
  c.quiet = true;
  return c;
}

}  // namespace

TEST_CASE("validation aggregates every violation") {
  RunConfig c;
  c.command = "converge";
  c.control_a = 0.9;
  c.modes = 0;
  c.target = "sawtooth";
  c.n_list = {4, 8, 12, 16};
  const auto errors = validate(c);
  CHECK(errors.size() == 4);

  std::ostringstream log;
  c.out = scratch("invalid").string();
  CHECK(execute(c, log) == kConfigError);
  CHECK(log.str().find("control interval") != std::string::npos);
  CHECK(log.str().find("does not divide") != std::string::npos);
  CHECK_FALSE(fs::exists(c.out));
}

TEST_CASE("solve") {
  std::ostringstream log;
  SUBCASE("default target") {
    const fs::path out = scratch("solve");
    CHECK(cmd_solve(small("solve", out), log) == kOk);
    const auto j = read_json(out / "solve.json");
    CHECK(j["cost"].get<double>() > 0.0);
    CHECK(j["cost"].get<double>() < j["half_target_norm_squared"].get<double>());
    CHECK(fs::exists(out / "control.csv"));
    CHECK(fs::exists(out / "state.csv"));
    CHECK(fs::exists(out / "adjoint.csv"));
  }
  SUBCASE("zero target") {
    const fs::path out = scratch("solve-zero");
    RunConfig c = small("solve", out);
    c.target = "zero";
    CHECK(cmd_solve(c, log) == kOk);
    CHECK(read_json(out / "solve.json")["cost"].get<double>() == 0.0);
    std::ifstream in(out / "control.csv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row == "0,0,0.0078125,0,0,0,0,0,0");
  }
  SUBCASE("solver failure") {
    RunConfig c = small("solve", scratch("solve-fail"));
    c.cg_max_iter = 1;
    c.cg_tol = 1e-15;
    CHECK(cmd_solve(c, log) == kSolverFailure);
  }
}

TEST_CASE("impulse and sampled commands") {
  std::ostringstream log;
  const fs::path out = scratch("impulse");
  RunConfig c = small("impulse", out);
  c.n = 8;
  CHECK(cmd_impulse(c, log) == kOk);
  CHECK(fs::exists(out / "impulses.csv"));
  c.command = "sampled";
  CHECK(cmd_sampled(c, log) == kOk);
  CHECK(fs::exists(out / "holds.csv"));
  c.n = 32;  // 4 steps per hold
  CHECK(cmd_sampled(c, log) == kConfigError);
  c.command = "impulse";
  c.n = 7;
  CHECK(cmd_impulse(c, log) == kConfigError);
}

TEST_CASE("converge") {
  std::ostringstream log;
  SUBCASE("zero target exits 0 with a degenerate flag") {
    const fs::path out = scratch("converge-zero");
    RunConfig c = small("converge", out);
    c.target = "zero";
    CHECK(cmd_converge(c, log) == kOk);
    CHECK(read_json(out / "report.json")["degenerate"].get<bool>());
  }
  SUBCASE("n not dividing the grid") {
    RunConfig c = small("converge", scratch("converge-bad"));
    c.n_list = {3, 4, 8, 16};
    CHECK(cmd_converge(c, log) == kConfigError);
  }
}

TEST_CASE("oracle") {
  std::ostringstream log;
  const fs::path out = scratch("oracle");
  RunConfig c = small("oracle", out);
  c.modes = 4;
  c.timesteps = 64;
  c.n = 4;
  CHECK(cmd_oracle(c, log) == kOk);
  CHECK(read_json(out / "oracle.json")["max_relative_deviation"].get<double>() <= 1e-8);

  c.target = "zero";
  CHECK(cmd_oracle(c, log) == kOk);
  CHECK(read_json(out / "oracle.json")["max_relative_deviation"].get<double>() == 0.0);

  c.modes = 16;
  CHECK(cmd_oracle(c, log) == kConfigError);
}

TEST_CASE("lemmas") {
  std::ostringstream log;
  const fs::path out = scratch("lemmas");
  RunConfig c = small("lemmas", out);
  CHECK(cmd_lemmas(c, log) == kOk);
  CHECK(read_json(out / "lemmas.json")["passed"].get<bool>());
  c.eps_list = {0.3, 0.1, 0.05};
  CHECK(cmd_lemmas(c, log) == kConfigError);
}

TEST_CASE("command line and config file") {
  CHECK(run_args({"solve", "--config", "/nonexistent/heatctl.toml", "--quiet"}) == kConfigError);
  CHECK(run_args({"--quiet"}) == kConfigError);
  CHECK(run_args({"frobnicate"}) == kConfigError);

  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.toml";
  {
    std::ofstream f(cfg);
    f << "modes = 5\ntimesteps = 64\ntarget = \"zero\"\nout = \"" << (dir / "out").string() << "\"\n";
  }
  // the command line overrides the file
  CHECK(run_args({"solve", "--config", cfg.string(), "--target", "phi1", "--quiet"}) == kOk);
  const auto j = read_json(dir / "out" / "solve.json");
  CHECK(j["config"]["modes"].get<int>() == 5);
  CHECK(j["config"]["timesteps"].get<int>() == 64);
  CHECK(j["config"]["target"].get<std::string>() == "phi1");
  CHECK(j["cost"].get<double>() > 0.0);

  CHECK(run_args({"converge", "--modes", "4", "--timesteps", "64", "--n-list", "2,4,5,8", "--quiet",
                  "--out", (dir / "c").string()}) == kConfigError);
}
