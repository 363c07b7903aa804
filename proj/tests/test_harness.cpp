#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "anita/harness.hpp"
#include "anita/rng.hpp"
#include "anita/verify.hpp"

using namespace anita;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("anita_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("trace csv format") {
  RunResult r;
  r.n = 1000;
  r.trace = {{0, 1000, 0.17328679513998632, 0},
             {5, 1010, 0.125, 7},
             {42, 2000, 1.25e-09, 123456}};
  TempDir dir("csv");
  fs::path file = dir.path / "t.csv";
  emit_trace_csv(r, file);
  std::string text = slurp(file);
  CHECK(text ==
        "iter,grads,passes,gap,wall_ns\n"
        "0,1000,1,0.17328679513998632,0\n"
        "5,1010,1.01,0.125,7\n"
        "42,2000,2,1.25e-09,123456\n");

  auto back = parse_trace_csv(file);
  REQUIRE(back.size() == r.trace.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].t == r.trace[k].t);
    CHECK(back[k].grads == r.trace[k].grads);
    CHECK(back[k].gap == r.trace[k].gap);
    CHECK(back[k].wall_ns == r.trace[k].wall_ns);
  }
}

TEST_CASE("empty trace emits a header-only file") {
  RunResult r;
  r.n = 10;
  TempDir dir("csv_empty");
  fs::path file = dir.path / "t.csv";
  emit_trace_csv(r, file);
  CHECK(slurp(file) == "iter,grads,passes,gap,wall_ns\n");
  CHECK(parse_trace_csv(file).empty());
}

TEST_CASE("problem source parsing") {
  ProblemSource s = parse_problem_source("synth:1000,100,7,0.05,0.1");
  CHECK(s.kind == ProblemSource::Kind::synth);
  CHECK(s.synth.n_samples == 1000);
  CHECK(s.synth.n_features == 100);
  CHECK(s.synth.seed == 7);
  CHECK(s.synth.label_noise == 0.05);
  CHECK(s.synth.density == 0.1);

  ProblemSource l = parse_problem_source("libsvm:data/a9a.txt");
  CHECK(l.kind == ProblemSource::Kind::libsvm);
  CHECK(l.path == fs::path("data/a9a.txt"));

  CHECK_THROWS_AS(parse_problem_source("synth:1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_problem_source("plaintext"), std::invalid_argument);
  CHECK_THROWS_AS(parse_problem_source("weird:1"), std::invalid_argument);
}

TEST_CASE("experiments are deterministic and deterministic-looking") {
  TempDir dir("exp");
  RunConfig cfg;
  cfg.problem = parse_problem_source("synth:120,10,3,0.1,0.4");
  cfg.lambda = 0.01;
  cfg.algorithms = {"anita-sc", "gd"};
  cfg.budget_passes = 12.0;
  cfg.seeds = {1, 2};
  cfg.log_every = 20;
  cfg.out_dir = dir.path / "a";
  Summary a = run_experiment(cfg);
  RunConfig cfg2 = cfg;
  cfg2.out_dir = dir.path / "b";
  Summary b = run_experiment(cfg2);

  for (const char* name :
       {"summary.json", "trace_anita-sc_seed1.csv", "trace_anita-sc_seed2.csv",
        "trace_gd_seed1.csv", "trace_gd_seed2.csv"}) {
    CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
  }
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("deterministic algorithms have identical seeds and zero spread") {
  TempDir dir("gdseeds");
  RunConfig cfg;
  cfg.problem = parse_problem_source("synth:100,8,9,0.1,0.5");
  cfg.lambda = 0.0;
  cfg.algorithms = {"gd"};
  cfg.budget_passes = 10.0;
  cfg.seeds = {1, 2, 3};
  cfg.log_every = 1;
  cfg.out_dir = dir.path;
  Summary summary = run_experiment(cfg);

  std::string t1 = slurp(dir.path / "trace_gd_seed1.csv");
  CHECK(t1 == slurp(dir.path / "trace_gd_seed2.csv"));
  CHECK(t1 == slurp(dir.path / "trace_gd_seed3.csv"));
  for (double s : summary.algorithms.at("gd").std_gap) CHECK(s == 0.0);
}

TEST_CASE("summary json structure") {
  TempDir dir("json");
  RunConfig cfg;
  cfg.problem = parse_problem_source("synth:100,8,9,0.1,0.5");
  cfg.lambda = 0.01;
  cfg.algorithms = {"anita-sc", "svrg"};
  cfg.budget_passes = 15.0;
  cfg.seeds = {1, 2};
  cfg.log_every = 10;
  cfg.out_dir = dir.path;
  run_experiment(cfg);

  nlohmann::json j = nlohmann::json::parse(slurp(dir.path / "summary.json"));
  CHECK(j["schema"] == 1);
  CHECK(j["problem"]["n"] == 100);
  CHECK(j["problem"]["d"] == 8);
  CHECK(j["problem"]["lambda"] == 0.01);
  REQUIRE(j["algorithms"].contains("anita-sc"));
  REQUIRE(j["algorithms"].contains("svrg"));
  for (const char* algo : {"anita-sc", "svrg"}) {
    const auto& a = j["algorithms"][algo];
    REQUIRE(a.contains("grid"));
    CHECK(a["grid"].size() == a["mean_gap"].size());
    CHECK(a["grid"].size() == a["std_gap"].size());
    for (const char* key : {"1e-2", "1e-3", "1e-4", "1e-6"})
      CHECK(a["passes_to"].contains(key));
  }
  // grids align across algorithms
  CHECK(j["algorithms"]["anita-sc"]["grid"] == j["algorithms"]["svrg"]["grid"]);
}

TEST_CASE("experiments run from libsvm files, rows normalized on load") {
  TempDir dir("libsvm_exp");
  // raw rows with non-unit norms; loading must normalize them
  std::ofstream file(dir.path / "tiny.libsvm", std::ios::binary);
  SplitMix64 rng(81);
  for (int i = 0; i < 40; ++i) {
    file << (rng.next_double() < 0.5 ? "+1" : "-1");
    for (int k = 1; k <= 6; ++k)
      if (rng.next_double() < 0.7)
        file << ' ' << k << ':' << (4.0 * rng.next_double() - 2.0);
    file << '\n';
  }
  file.close();

  RunConfig cfg;
  cfg.problem =
      parse_problem_source("libsvm:" + (dir.path / "tiny.libsvm").string());
  cfg.lambda = 0.05;
  cfg.algorithms = {"anita-sc"};
  cfg.budget_passes = 20.0;
  cfg.seeds = {1};
  cfg.log_every = 10;
  cfg.out_dir = dir.path / "out";
  Summary summary = run_experiment(cfg);
  CHECK(summary.n == 40);
  CHECK(summary.d == 6);
  // unit rows pin the smoothness constant at 1/4 + lambda
  CHECK(summary.smoothness_L == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fs::exists(cfg.out_dir / "trace_anita-sc_seed1.csv"));

  cfg.problem = parse_problem_source("libsvm:/no/such/file.libsvm");
  CHECK_THROWS(run_experiment(cfg));
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.problem = parse_problem_source("synth:50,5,1,0.1,0.5");
  cfg.lambda = 0.0;
  cfg.algorithms = {"anita-sc"};
  cfg.budget_passes = 5.0;
  cfg.seeds = {1};
  cfg.out_dir = fs::temp_directory_path() / "anita_test_invalid";
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);  // sc needs lambda

  cfg.algorithms = {"warp-drive"};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

  cfg.algorithms = {"gd"};
  cfg.budget_passes = 0.5;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

  cfg.budget_passes = 5.0;
  cfg.seeds = {};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("verify: schedule check is sensitive to corrupted stepsizes") {
  VerifyOptions ok;
  ok.only = {9};
  VerifyReport good = verify_suite(ok);
  REQUIRE(good.checks.size() == 1);
  CHECK(good.checks[0].pass);

  VerifyOptions bad;
  bad.only = {9};
  bad.eta_scale = 2.0;
  VerifyReport corrupted = verify_suite(bad);
  REQUIRE(corrupted.checks.size() == 1);
  CHECK_FALSE(corrupted.checks[0].pass);
  CHECK_FALSE(corrupted.all_pass());
}

TEST_CASE("verify: an empty registry yields zero checks and failure") {
  VerifyOptions opts;
  opts.use_default_registry = false;
  VerifyReport report = verify_suite(opts);
  CHECK(report.checks.empty());
  CHECK_FALSE(report.all_pass());
}
