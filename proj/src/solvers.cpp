#include "anita/solvers.hpp"

#include <chrono>
#include <cmath>

#include "anita/kernels.hpp"

namespace anita {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point start) {
  return std::uint64_t(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
          .count());
}

constexpr double kGapFloor = -1e-12;
constexpr double kGapCeil = 1e12;

void append_record(std::vector<TraceRecord>& trace, std::uint64_t t,
                   std::uint64_t grads, double f_now, double fstar,
                   Clock::time_point start) {
  double gap = f_now - fstar;
  if (!std::isfinite(gap) || gap > kGapCeil)
    throw DivergenceError(t, "function gap diverged");
  if (gap < kGapFloor)
    throw DivergenceError(t, "gap below the reference optimum");
  trace.push_back({t, grads, gap, elapsed_ns(start)});
}

}  // namespace

DivergenceError::DivergenceError(std::uint64_t t, const std::string& what)
    : std::runtime_error("iteration " + std::to_string(t) + ": " + what),
      t_(t) {}

AnitaState anita_init(const Problem& p, std::uint64_t seed, Vec x0,
                      Stage1Mode stage1, GradCounter& ctr) {
  if (x0.size() != p.dim())
    throw std::invalid_argument("anita_init: x0 dimension mismatch");
  AnitaState st;
  st.x = x0;
  st.x_under = x0;
  st.x_bar = x0;
  st.stage.mode = stage1;
  st.rng = SplitMix64(seed);
  st.est_scratch.resize(p.dim());
  st.x_next_scratch.resize(p.dim());
  refresh_snapshot(p, st.cache, std::move(x0), ctr);
  return st;
}

void anita_step(const Problem& p, AnitaState& st, const ScheduleParams& params,
                double mu, GradCounter& ctr) {
  const double theta = params.theta;
  const double eta = params.eta;

  kernels::lincomb(theta, st.x, 1.0 - theta, st.cache.w, st.x_under);

  std::size_t i = std::size_t(st.rng.next_below(p.n()));
  estimate(p, st.cache, st.x_under, i, ctr, st.est_scratch);

  // x_{t+1} = (x_t + mu*eta*x_under)/(1+mu*eta) - (eta/alpha)*estimate
  double c1 = 1.0, c2 = 0.0;
  if (mu > 0.0) {
    c1 = 1.0 / (1.0 + mu * eta);
    c2 = c1 * (mu * eta);
  }
  kernels::lincomb3(c1, st.x, c2, st.x_under, -(eta / params.alpha),
                    st.est_scratch, st.x_next_scratch);
  std::swap(st.x, st.x_next_scratch);
  if (!kernels::all_finite(st.x))
    throw DivergenceError(st.t, "non-finite iterate");

  kernels::lincomb(theta, st.x, 1.0 - theta, st.cache.w, st.x_bar);

  double coin = st.rng.next_double();
  bool accept;
  if (!st.stage.t1_observed && st.stage.mode == Stage1Mode::derandomized)
    accept = st.t == p.n();
  else
    accept = coin < params.p;

  st.refreshed_last = accept;
  if (accept) {
    refresh_snapshot(p, st.cache, st.x_bar, ctr);
    ++st.refreshes;
    if (!st.stage.t1_observed) st.stage.t1_observed = st.t;
  }
  ++st.t;
}

RunResult run_anita(const Problem& p, AnitaMode mode,
                    std::uint64_t budget_grads, std::uint64_t seed,
                    std::uint64_t log_every, double fstar,
                    const AnitaOptions& opts) {
  const std::size_t n = p.n();
  if (budget_grads < n)
    throw std::invalid_argument("run_anita: budget below one full gradient");
  double mu = 0.0;
  ScheduleParams sc_params;
  if (mode == AnitaMode::strongly_convex) {
    mu = p.strong_convexity();
    if (mu <= 0.0)
      throw std::invalid_argument(
          "run_anita: strongly-convex mode needs mu > 0");
    sc_params = strongly_convex_params(n, p.smoothness(), mu, opts.p_override);
  }

  auto start = Clock::now();
  GradCounter ctr;
  Vec x0 = opts.x0.value_or(Vec(p.dim(), 0.0));
  AnitaState st = anita_init(p, seed, std::move(x0), opts.stage1, ctr);

  RunResult res;
  res.seed = seed;
  res.n = n;
  append_record(res.trace, 0, ctr.total, st.cache.f_w, fstar, start);

  while (ctr.total + 2 <= budget_grads) {
    ScheduleParams params =
        mode == AnitaMode::general_convex
            ? general_convex_params(st.t, st.stage, n, p.smoothness())
            : sc_params;
    anita_step(p, st, params, mu, ctr);
    if (st.refreshed_last || (log_every > 0 && st.t % log_every == 0))
      append_record(res.trace, st.t, ctr.total, st.cache.f_w, fstar, start);
  }
  if (res.trace.back().t != st.t)
    append_record(res.trace, st.t, ctr.total, st.cache.f_w, fstar, start);

  res.output = st.cache.w;
  res.grad_total = ctr.total;
  res.iterations = st.t;
  res.refreshes = st.refreshes;
  return res;
}

RunResult run_gd(const Problem& p, std::uint64_t budget_grads, double fstar) {
  const std::size_t n = p.n();
  if (budget_grads < n)
    throw std::invalid_argument("run_gd: budget below one full gradient");
  auto start = Clock::now();
  const double eta = 1.0 / p.smoothness();

  Vec x(p.dim(), 0.0), g(p.dim());
  GradCounter ctr;
  RunResult res;
  res.n = n;
  append_record(res.trace, 0, 0, p.value(x), fstar, start);

  std::uint64_t t = 0;
  while (ctr.total + n <= budget_grads) {
    p.full_grad(x, g);
    ctr.total += n;
    kernels::axpy(-eta, g, x);
    ++t;
    if (!kernels::all_finite(x)) throw DivergenceError(t, "non-finite iterate");
    append_record(res.trace, t, ctr.total, p.value(x), fstar, start);
  }
  res.output = std::move(x);
  res.grad_total = ctr.total;
  res.iterations = t;
  return res;
}

RunResult run_agd(const Problem& p, std::uint64_t budget_grads, double fstar) {
  const std::size_t n = p.n();
  if (budget_grads < n)
    throw std::invalid_argument("run_agd: budget below one full gradient");
  auto start = Clock::now();
  const double L = p.smoothness();
  const double mu = p.strong_convexity();
  const double eta = 1.0 / L;
  const bool strongly = mu > 0.0;
  const double beta_sc =
      strongly ? (std::sqrt(L) - std::sqrt(mu)) / (std::sqrt(L) + std::sqrt(mu))
               : 0.0;

  Vec x(p.dim(), 0.0), x_prev(p.dim(), 0.0), y(p.dim()), g(p.dim());
  GradCounter ctr;
  RunResult res;
  res.n = n;
  append_record(res.trace, 0, 0, p.value(x), fstar, start);

  std::uint64_t t = 0;
  while (ctr.total + n <= budget_grads) {
    double beta = strongly ? beta_sc : double(t) / double(t + 3);
    kernels::lincomb(1.0 + beta, x, -beta, x_prev, y);
    p.full_grad(y, g);
    ctr.total += n;
    std::swap(x_prev, x);
    kernels::lincomb(1.0, y, -eta, g, x);
    ++t;
    if (!kernels::all_finite(x)) throw DivergenceError(t, "non-finite iterate");
    append_record(res.trace, t, ctr.total, p.value(x), fstar, start);
  }
  res.output = std::move(x);
  res.grad_total = ctr.total;
  res.iterations = t;
  return res;
}

RunResult run_svrg_loopless(const Problem& p, std::uint64_t budget_grads,
                            std::uint64_t seed, double fstar,
                            std::uint64_t log_every) {
  const std::size_t n = p.n();
  if (budget_grads < n)
    throw std::invalid_argument("run_svrg_loopless: budget below one full gradient");
  auto start = Clock::now();
  const double eta = 1.0 / (4.0 * p.smoothness());
  const double p_snap = 1.0 / double(n);

  GradCounter ctr;
  SplitMix64 rng(seed);
  Vec x(p.dim(), 0.0), est(p.dim());
  SnapshotCache cache;
  refresh_snapshot(p, cache, x, ctr);

  RunResult res;
  res.seed = seed;
  res.n = n;
  append_record(res.trace, 0, ctr.total, cache.f_w, fstar, start);

  std::uint64_t t = 0, refreshes = 0;
  while (ctr.total + 2 <= budget_grads) {
    std::size_t i = std::size_t(rng.next_below(n));
    estimate(p, cache, x, i, ctr, est);
    kernels::axpy(-eta, est, x);
    ++t;
    if (!kernels::all_finite(x)) throw DivergenceError(t, "non-finite iterate");
    bool accept = rng.next_double() < p_snap;
    if (accept) {
      refresh_snapshot(p, cache, x, ctr);
      ++refreshes;
    }
    if (accept || (log_every > 0 && t % log_every == 0))
      append_record(res.trace, t, ctr.total, cache.f_w, fstar, start);
  }
  if (res.trace.back().t != t)
    append_record(res.trace, t, ctr.total, cache.f_w, fstar, start);

  res.output = cache.w;
  res.grad_total = ctr.total;
  res.iterations = t;
  res.refreshes = refreshes;
  return res;
}

}  // namespace anita
