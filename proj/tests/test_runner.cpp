#include "swt/runner.hpp"

#include "swt/report.hpp"

#include "doctest.h"

#include <filesystem>
#include <string>

using namespace swt;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("swt_runner_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

ExperimentConfig from(const std::string& text) {
  return experiment_from(Config::parse_string(text));
}

}  // namespace

TEST_CASE("identities runner: green on a healthy sector") {
  TempDir dir("id_ok");
  const ExperimentConfig ec = from(
      "geometry.dims = 5 5 5 5\n"
      "geometry.k = constant -1\n"
      "sector.flux = 2 0 0 0 0 0\n"
      "sector.fluctuation = random_smooth 0.4 1\n"
      "seed = 3\n");
  CHECK(run_identities(ec, dir.str()) == kExitOk);
  const std::string report = read_file(dir.str() + "/identities.json");
  CHECK(report.find("\"all_pass\": true") != std::string::npos);
  CHECK(report.find("\"subcommand\": \"identities\"") != std::string::npos);
}

TEST_CASE("identities runner: fault injection turns the battery red") {
  // Scaling the Clifford action breaks the pairing/eigen-action identities;
  // the runner must notice and exit with the identity-failure code.
  TempDir dir("id_bad");
  const ExperimentConfig ec = from(
      "geometry.dims = 5 5 5 5\n"
      "sector.flux = 2 0 0 0 0 0\n"
      "debug.clifford_scale = 1.01\n"
      "seed = 3\n");
  CHECK(run_identities(ec, dir.str()) == kExitIdentityFailure);
  const std::string report = read_file(dir.str() + "/identities.json");
  CHECK(report.find("\"all_pass\": false") != std::string::npos);
  CHECK(report.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("flow runner: exit code reflects convergence") {
  TempDir dir("flow_short");
  const ExperimentConfig ec = from(
      "geometry.dims = 4 4 4 4\n"
      "geometry.k = constant -1\n"
      "sector.flux = 2 0 0 0 0 0\n"
      "spinor.init = random_smooth 0.5 1\n"
      "flow.max_iters = 2\n"
      "flow.grad_tol = 1e-14\n"
      "seed = 5\n");
  CHECK(run_flow(ec, dir.str()) == kExitNotConverged);
  const std::string report = read_file(dir.str() + "/flow.json");
  CHECK(report.find("\"status\": \"NOT_CONVERGED\"") != std::string::npos);
  CHECK(report.find("\"classification\": \"NOT_CONVERGED\"") != std::string::npos);
  CHECK(fs::exists(dir.path / "trace.csv"));

  TempDir dir2("flow_ok");
  const ExperimentConfig ec2 = from(
      "geometry.dims = 4 4 4 4\n"
      "geometry.k = constant -1\n"
      "spinor.init = constant 1 0 0 0\n"
      "flow.grad_tol = 1e-8\n"
      "seed = 5\n");
  CHECK(run_flow(ec2, dir2.str()) == kExitOk);
  const std::string report2 = read_file(dir2.str() + "/flow.json");
  CHECK(report2.find("\"status\": \"CONVERGED\"") != std::string::npos);
  CHECK(report2.find("\"classification\": \"REDUCIBLE_MIN\"") != std::string::npos);
  CHECK(report2.find("\"monopole_consistent\": true") != std::string::npos);
}

TEST_CASE("screen runner: torus scan and budget rejection") {
  TempDir dir("screen_ok");
  const ExperimentConfig ec = from(
      "geometry.dims = 4 4 4 4\n"
      "geometry.k = constant -1\n"
      "screen.form = torus\n"
      "screen.bound = 1\n");
  CHECK(run_screen(ec, dir.str()) == kExitOk);
  const std::string report = read_file(dir.str() + "/screen.json");
  CHECK(report.find("\"scanned\": 729") != std::string::npos);
  CHECK(report.find("\"budget_exceeded\": false") != std::string::npos);
  CHECK(fs::exists(dir.path / "classes.csv"));

  TempDir dir2("screen_budget");
  const ExperimentConfig ec2 = from(
      "screen.form = k3\n"
      "screen.bound = 3\n"
      "screen.volume = 1\n"
      "screen.k_minus = 1\n");
  CHECK(run_screen(ec2, dir2.str()) == kExitBudgetExceeded);
  const std::string report2 = read_file(dir2.str() + "/screen.json");
  CHECK(report2.find("\"budget_exceeded\": true") != std::string::npos);
  CHECK(report2.find("\"error\"") != std::string::npos);
}

TEST_CASE("reruns with equal config and seed are byte-identical") {
  const std::string text =
      "geometry.dims = 4 4 4 4\n"
      "geometry.k = constant -0.5\n"
      "sector.flux = 0 0 0 0 0 2\n"
      "sector.fluctuation = random 0.5\n"
      "spinor.init = random 0.5\n"
      "flow.max_iters = 40\n"
      "flow.grad_tol = 1e-12\n"
      "seed = 11\n";
  TempDir d1("det_a"), d2("det_b");
  const int c1 = run_flow(from(text), d1.str());
  const int c2 = run_flow(from(text), d2.str());
  CHECK(c1 == c2);
  CHECK(read_file(d1.str() + "/flow.json") == read_file(d2.str() + "/flow.json"));
  CHECK(read_file(d1.str() + "/trace.csv") == read_file(d2.str() + "/trace.csv"));

  TempDir d3("det_c"), d4("det_d");
  const std::string id_text =
      "geometry.dims = 4 4 4 4\n"
      "sector.flux = 2 0 0 0 0 0\n"
      "sector.fluctuation = random_smooth 0.4 1\n"
      "seed = 9\n";
  CHECK(run_identities(from(id_text), d3.str()) ==
        run_identities(from(id_text), d4.str()));
  CHECK(read_file(d3.str() + "/identities.json") ==
        read_file(d4.str() + "/identities.json"));
}
