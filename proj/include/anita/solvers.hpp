#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "anita/problems.hpp"
#include "anita/rng.hpp"
#include "anita/schedules.hpp"
#include "anita/vrgrad.hpp"

namespace anita {

// One logged point of a run. `gap` is f at the current output iterate minus
// the reference optimum; `grads` the cumulative stochastic-gradient count.
struct TraceRecord {
  std::uint64_t t = 0;
  std::uint64_t grads = 0;
  double gap = 0.0;
  std::uint64_t wall_ns = 0;
};

struct RunResult {
  Vec output;  // the final snapshot (or iterate, for full-gradient methods)
  std::vector<TraceRecord> trace;
  std::uint64_t grad_total = 0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  std::uint64_t refreshes = 0;  // snapshot refreshes, excluding the initial one
  std::size_t n = 0;            // component count, for grads -> passes
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::uint64_t t, const std::string& what);
  std::uint64_t iteration() const { return t_; }

 private:
  std::uint64_t t_;
};

enum class AnitaMode { general_convex, strongly_convex };

// Live state of one run: primal iterate x_t, the snapshot cache (w_t and
// its full gradient), the two interpolated points, the stage tracker, and
// the run's generator. Owned by exactly one run.
struct AnitaState {
  Vec x;
  Vec x_under;  // theta*x_t + (1-theta)*w_t
  Vec x_bar;    // theta*x_{t+1} + (1-theta)*w_t
  SnapshotCache cache;
  StageState stage;
  SplitMix64 rng{0};
  std::uint64_t t = 0;
  std::uint64_t refreshes = 0;
  bool refreshed_last = false;

  Vec est_scratch;
  Vec x_next_scratch;
};

// Charges n to the counter for the full gradient at w_0 = x_0.
AnitaState anita_init(const Problem& p, std::uint64_t seed, Vec x0,
                      Stage1Mode stage1, GradCounter& ctr);

// Exactly one iteration: interpolate toward the snapshot, sample a
// component, form the variance-reduced gradient (+2 evaluations), take the
// scaled update step, interpolate the candidate snapshot, then flip the
// refresh coin (+n evaluations on acceptance). Draw order per iteration is
// fixed: component index first, then the coin. mu must be 0 in
// general-convex runs.
void anita_step(const Problem& p, AnitaState& st, const ScheduleParams& params,
                double mu, GradCounter& ctr);

struct AnitaOptions {
  Stage1Mode stage1 = Stage1Mode::probabilistic;
  std::optional<Vec> x0;                 // defaults to the origin
  std::optional<double> p_override;      // strongly-convex mode only
};

// Runs until the budget cannot afford another estimator call. Logs a record
// at t = 0, at every snapshot refresh, every log_every iterations
// (log_every == 0 disables cadence logging), and at the final iteration.
RunResult run_anita(const Problem& p, AnitaMode mode,
                    std::uint64_t budget_grads, std::uint64_t seed,
                    std::uint64_t log_every, double fstar,
                    const AnitaOptions& opts = {});

// Full gradient descent with eta = 1/L; n evaluations and one record per
// iteration.
RunResult run_gd(const Problem& p, std::uint64_t budget_grads, double fstar);

// Nesterov momentum with eta = 1/L: t/(t+3) momentum when mu = 0, constant
// (sqrt L - sqrt mu)/(sqrt L + sqrt mu) momentum when mu > 0.
RunResult run_agd(const Problem& p, std::uint64_t budget_grads, double fstar);

// Loopless SVRG baseline: plain step x - eta*estimate with eta = 1/(4L) and
// Bernoulli(1/n) snapshot refresh; same counting and logging rules as ANITA.
RunResult run_svrg_loopless(const Problem& p, std::uint64_t budget_grads,
                            std::uint64_t seed, double fstar,
                            std::uint64_t log_every = 0);

}  // namespace anita
