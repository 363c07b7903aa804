#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anita/harness.hpp"
#include "anita/kernels.hpp"
#include "anita/verify.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anita: loopless accelerated variance-reduced optimization benchmark"};
  app.require_subcommand(1);

  // --- run ---
  auto* run_cmd = app.add_subcommand("run", "run an experiment grid");
  std::string problem_spec, algos = "anita-gc", stage1 = "prob", seed_list;
  std::string out_dir = "results", fstar_cache, kernels_name;
  double lambda = 0.0, budget_passes = 0.0;
  std::uint64_t n_seeds = 1, log_every = 100;
  run_cmd->add_option("--problem", problem_spec,
                      "libsvm:<path> or synth:<n>,<d>,<seed>,<noise>,<density>")
      ->required();
  run_cmd->add_option("--lambda", lambda, "ridge weight (default 0)");
  run_cmd->add_option("--algo", algos,
                      "comma list of anita-gc,anita-sc,gd,agd,svrg");
  run_cmd->add_option("--budget-passes", budget_passes, "budget in data passes")
      ->required();
  run_cmd->add_option("--seeds", n_seeds, "use seeds 1..k");
  run_cmd->add_option("--seed-list", seed_list, "explicit comma list of seeds");
  run_cmd->add_option("--log-every", log_every, "trace cadence in iterations");
  run_cmd->add_option("--stage1", stage1, "prob|derand (anita-gc only)");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--fstar-cache", fstar_cache, "reference cache file");
  run_cmd->add_option("--kernels", kernels_name, "force scalar|avx2|auto");

  // --- verify ---
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  std::string golden_dir = "tests/golden", work_dir, only_list;
  double eta_scale = 1.0;
  bool write_golden = false;
  verify_cmd->add_option("--golden-dir", golden_dir, "golden file directory");
  verify_cmd->add_option("--work-dir", work_dir, "scratch directory");
  verify_cmd->add_option("--only", only_list, "comma list of check ids");
  verify_cmd->add_option("--eta-scale", eta_scale,
                         "debug: corrupt all stepsizes by this factor");
  verify_cmd->add_flag("--write-golden", write_golden,
                       "regenerate golden files and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      if (!kernels_name.empty() && !anita::kernels::select(kernels_name)) {
        std::cerr << "unsupported kernel backend '" << kernels_name << "'\n";
        return 2;
      }
      anita::RunConfig cfg;
      cfg.problem = anita::parse_problem_source(problem_spec);
      cfg.lambda = lambda;
      cfg.algorithms = split_csv(algos);
      cfg.budget_passes = budget_passes;
      if (!seed_list.empty())
        for (const std::string& s : split_csv(seed_list))
          cfg.seeds.push_back(std::stoull(s));
      else
        for (std::uint64_t s = 1; s <= n_seeds; ++s) cfg.seeds.push_back(s);
      cfg.log_every = log_every;
      if (stage1 == "prob")
        cfg.stage1 = anita::Stage1Mode::probabilistic;
      else if (stage1 == "derand")
        cfg.stage1 = anita::Stage1Mode::derandomized;
      else {
        std::cerr << "--stage1 must be prob or derand\n";
        return 2;
      }
      cfg.out_dir = out_dir;
      if (!fstar_cache.empty()) cfg.fstar_cache = fstar_cache;

      anita::Summary summary = anita::run_experiment(cfg);
      std::cout << "wrote " << (cfg.out_dir / "summary.json").string() << " ("
                << summary.algorithms.size() << " algorithms, "
                << cfg.seeds.size() << " seeds, kernels "
                << anita::kernels::active().name << ")\n";
      return 0;
    }

    // verify
    if (write_golden) {
      anita::write_golden_files(golden_dir);
      std::cout << "golden files written to " << golden_dir << "\n";
      return 0;
    }
    anita::VerifyOptions opts;
    opts.golden_dir = golden_dir;
    if (!work_dir.empty()) opts.work_dir = work_dir;
    opts.eta_scale = eta_scale;
    if (!only_list.empty())
      for (const std::string& s : split_csv(only_list))
        opts.only.push_back(std::stoi(s));
    anita::VerifyReport report = anita::verify_suite(opts);
    anita::print_report(report, std::cout);
    return report.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
