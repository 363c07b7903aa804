#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anita/dataio.hpp"
#include "anita/oracle.hpp"
#include "anita/problems.hpp"
#include "anita/solvers.hpp"

namespace anita {

// Problem source: "libsvm:<path>" or "synth:<n>,<d>,<seed>,<noise>,<density>"
struct ProblemSource {
  enum class Kind { libsvm, synth } kind = Kind::synth;
  std::filesystem::path path;
  SynthConfig synth;
  std::string spec;  // the original spec string, echoed into the summary
};

ProblemSource parse_problem_source(const std::string& spec);

struct RunConfig {
  ProblemSource problem;
  double lambda = 0.0;
  std::vector<std::string> algorithms;  // anita-gc, anita-sc, gd, agd, svrg
  double budget_passes = 0.0;           // stochastic gradients / n
  std::vector<std::uint64_t> seeds;
  std::uint64_t log_every = 100;
  Stage1Mode stage1 = Stage1Mode::probabilistic;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> fstar_cache;
};

struct AlgoSummary {
  std::vector<double> grid;  // grad counts, aligned across algorithms
  std::vector<double> mean_gap;
  std::vector<double> std_gap;
  // mean passes to reach each threshold; absent when any seed never does
  std::map<std::string, std::optional<double>> passes_to;
};

struct Summary {
  int schema = 1;
  std::string problem_spec;
  double lambda = 0.0;
  std::size_t n = 0;
  std::size_t d = 0;
  double smoothness_L = 0.0;
  double strong_mu = 0.0;
  double f_star = 0.0;
  std::string problem_hash;
  std::map<std::string, AlgoSummary> algorithms;

  std::string to_json() const;  // deterministic, 2-space indent
};

// Runs every (algorithm x seed) pair, writes one trace CSV per run plus
// summary.json, and returns the aggregate. Deterministic given cfg; the
// wall_ns column is zeroed in emitted files so artifacts are byte-stable.
Summary run_experiment(const RunConfig& cfg);

// Header `iter,grads,passes,gap,wall_ns`; passes is grads/n in the shortest
// round-trip decimal form, gap has 17 significant digits, LF endings.
void emit_trace_csv(const RunResult& result, const std::filesystem::path& path);

std::vector<TraceRecord> parse_trace_csv(const std::filesystem::path& path);

// threshold keys used in every passes-to table
extern const std::vector<std::pair<std::string, double>> kGapThresholds;

}  // namespace anita
