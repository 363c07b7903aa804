#include "anita/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace anita {

const std::vector<std::pair<std::string, double>> kGapThresholds = {
    {"1e-2", 1e-2}, {"1e-3", 1e-3}, {"1e-4", 1e-4}, {"1e-6", 1e-6}};

namespace {

std::string fmt_shortest(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string fmt_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (true) {
    std::size_t j = s.find(sep, i);
    out.push_back(s.substr(i, j - i));
    if (j == std::string::npos) break;
    i = j + 1;
  }
  return out;
}

}  // namespace

ProblemSource parse_problem_source(const std::string& spec) {
  ProblemSource src;
  src.spec = spec;
  std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("problem spec needs a 'libsvm:' or 'synth:' prefix");
  std::string scheme = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (scheme == "libsvm") {
    if (rest.empty()) throw std::invalid_argument("libsvm: missing path");
    src.kind = ProblemSource::Kind::libsvm;
    src.path = rest;
    return src;
  }
  if (scheme == "synth") {
    auto parts = split(rest, ',');
    if (parts.size() != 5)
      throw std::invalid_argument(
          "synth spec must be synth:<n>,<d>,<seed>,<noise>,<density>");
    src.kind = ProblemSource::Kind::synth;
    src.synth.n_samples = std::stoull(parts[0]);
    src.synth.n_features = std::stoull(parts[1]);
    src.synth.seed = std::stoull(parts[2]);
    src.synth.label_noise = std::stod(parts[3]);
    src.synth.density = std::stod(parts[4]);
    return src;
  }
  throw std::invalid_argument("unknown problem scheme '" + scheme + "'");
}

void emit_trace_csv(const RunResult& result,
                    const std::filesystem::path& path) {
  if (result.n == 0 && !result.trace.empty())
    throw std::invalid_argument("emit_trace_csv: component count not set");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "iter,grads,passes,gap,wall_ns\n";
  for (const TraceRecord& r : result.trace) {
    double passes = double(r.grads) / double(result.n);
    out << r.t << ',' << r.grads << ',' << fmt_shortest(passes) << ','
        << fmt_g17(r.gap) << ',' << r.wall_ns << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<TraceRecord> parse_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "iter,grads,passes,gap,wall_ns")
    throw std::runtime_error("bad trace header in " + path.string());
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (cols.size() != 5)
      throw std::runtime_error("bad trace row in " + path.string());
    TraceRecord r;
    r.t = std::stoull(cols[0]);
    r.grads = std::stoull(cols[1]);
    r.gap = std::stod(cols[3]);
    r.wall_ns = std::stoull(cols[4]);
    out.push_back(r);
  }
  return out;
}

namespace {

RunResult dispatch_run(const Problem& p, const std::string& algo,
                       std::uint64_t budget, std::uint64_t seed,
                       std::uint64_t log_every, double fstar,
                       Stage1Mode stage1) {
  if (algo == "gd") return run_gd(p, budget, fstar);
  if (algo == "agd") return run_agd(p, budget, fstar);
  if (algo == "svrg") return run_svrg_loopless(p, budget, seed, fstar, log_every);
  AnitaOptions opts;
  opts.stage1 = stage1;
  if (algo == "anita-gc")
    return run_anita(p, AnitaMode::general_convex, budget, seed, log_every,
                     fstar, opts);
  if (algo == "anita-sc")
    return run_anita(p, AnitaMode::strongly_convex, budget, seed, log_every,
                     fstar, opts);
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

double interp_gap(const std::vector<TraceRecord>& trace, double grads) {
  // piecewise linear in grad count; caller guarantees grads is in range
  auto it = std::lower_bound(
      trace.begin(), trace.end(), grads,
      [](const TraceRecord& r, double g) { return double(r.grads) < g; });
  if (it == trace.begin()) return it->gap;
  if (it == trace.end()) return trace.back().gap;
  const TraceRecord& hi = *it;
  const TraceRecord& lo = *(it - 1);
  if (hi.grads == lo.grads) return hi.gap;
  double w = (grads - double(lo.grads)) / (double(hi.grads) - double(lo.grads));
  return lo.gap + w * (hi.gap - lo.gap);
}

std::optional<double> passes_to_threshold(const std::vector<TraceRecord>& trace,
                                          double threshold, std::size_t n) {
  for (const TraceRecord& r : trace)
    if (r.gap <= threshold) return double(r.grads) / double(n);
  return std::nullopt;
}

}  // namespace

Summary run_experiment(const RunConfig& cfg) {
  if (cfg.algorithms.empty())
    throw std::invalid_argument("no algorithms requested");
  if (cfg.seeds.empty()) throw std::invalid_argument("no seeds requested");
  if (cfg.budget_passes < 1.0)
    throw std::invalid_argument("budget must be at least one data pass");

  SparseDataset ds =
      cfg.problem.kind == ProblemSource::Kind::synth
          ? generate_synthetic(cfg.problem.synth)
          : normalize_rows(load_libsvm(cfg.problem.path));
  Problem problem = Problem::logistic(std::move(ds), cfg.lambda);

  for (const std::string& algo : cfg.algorithms)
    if (algo == "anita-sc" && cfg.lambda <= 0.0)
      throw std::invalid_argument("anita-sc requires lambda > 0");

  const std::size_t n = problem.n();
  const std::uint64_t budget =
      std::uint64_t(std::llround(cfg.budget_passes * double(n)));
  double fstar = resolve_fstar(problem, cfg.fstar_cache);

  std::filesystem::create_directories(cfg.out_dir);

  std::map<std::string, std::vector<RunResult>> runs;
  for (const std::string& algo : cfg.algorithms) {
    for (std::uint64_t seed : cfg.seeds) {
      RunResult res = dispatch_run(problem, algo, budget, seed, cfg.log_every,
                                   fstar, cfg.stage1);
      // zero the timing column so artifacts are reproducible byte for byte
      for (TraceRecord& r : res.trace) r.wall_ns = 0;
      std::filesystem::path trace_path =
          cfg.out_dir /
          ("trace_" + algo + "_seed" + std::to_string(seed) + ".csv");
      emit_trace_csv(res, trace_path);
      runs[algo].push_back(std::move(res));
    }
  }

  // common grid: whole data passes covered by every run (no extrapolation)
  std::uint64_t lo_pass = 0, hi_pass = UINT64_MAX;
  for (const auto& [algo, results] : runs) {
    for (const RunResult& r : results) {
      std::uint64_t first = r.trace.front().grads;
      std::uint64_t last = r.trace.back().grads;
      lo_pass = std::max(lo_pass, std::uint64_t((first + n - 1) / n));
      hi_pass = std::min(hi_pass, std::uint64_t(last / n));
    }
  }

  Summary summary;
  summary.problem_spec = cfg.problem.spec;
  summary.lambda = cfg.lambda;
  summary.n = n;
  summary.d = problem.dim();
  summary.smoothness_L = problem.smoothness();
  summary.strong_mu = problem.strong_convexity();
  summary.f_star = fstar;
  {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  (unsigned long long)problem.content_hash());
    summary.problem_hash = buf;
  }

  for (const auto& [algo, results] : runs) {
    AlgoSummary as;
    for (std::uint64_t pass = lo_pass; pass <= hi_pass; ++pass) {
      double g = double(pass) * double(n);
      as.grid.push_back(g);
      std::vector<double> vals;
      vals.reserve(results.size());
      for (const RunResult& r : results) vals.push_back(interp_gap(r.trace, g));
      bool all_equal = std::all_of(vals.begin(), vals.end(),
                                   [&](double v) { return v == vals[0]; });
      if (all_equal) {
        as.mean_gap.push_back(vals[0]);
        as.std_gap.push_back(0.0);
        continue;
      }
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= double(vals.size());
      double var = 0.0;
      for (double v : vals) var += (v - mean) * (v - mean);
      var = vals.size() > 1 ? var / double(vals.size() - 1) : 0.0;
      as.mean_gap.push_back(mean);
      as.std_gap.push_back(std::sqrt(var));
    }
    for (const auto& [key, threshold] : kGapThresholds) {
      double sum = 0.0;
      bool all = true;
      for (const RunResult& r : results) {
        auto pt = passes_to_threshold(r.trace, threshold, n);
        if (!pt) {
          all = false;
          break;
        }
        sum += *pt;
      }
      as.passes_to[key] = all ? std::optional<double>(sum / double(results.size()))
                              : std::nullopt;
    }
    summary.algorithms[algo] = std::move(as);
  }

  std::ofstream out(cfg.out_dir / "summary.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write summary.json");
  out << summary.to_json() << '\n';
  return summary;
}

std::string Summary::to_json() const {
  nlohmann::json j;
  j["schema"] = schema;
  j["problem"] = {{"spec", problem_spec}, {"lambda", lambda},
                  {"n", n},               {"d", d},
                  {"L", smoothness_L},    {"mu", strong_mu},
                  {"f_star", f_star},     {"hash", problem_hash}};
  nlohmann::json algos = nlohmann::json::object();
  for (const auto& [name, as] : algorithms) {
    nlohmann::json ja;
    ja["grid"] = as.grid;
    ja["mean_gap"] = as.mean_gap;
    ja["std_gap"] = as.std_gap;
    nlohmann::json pt = nlohmann::json::object();
    for (const auto& [key, val] : as.passes_to) {
      if (val)
        pt[key] = *val;
      else
        pt[key] = nullptr;
    }
    ja["passes_to"] = pt;
    algos[name] = ja;
  }
  j["algorithms"] = algos;
  return j.dump(2);
}

}  // namespace anita
