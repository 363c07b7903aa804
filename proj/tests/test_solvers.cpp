#include <doctest.h>

#include <cmath>
#include <optional>

#include "anita/kernels.hpp"
#include "anita/oracle.hpp"
#include "anita/solvers.hpp"

using namespace anita;

namespace {

Problem shifted_quad_1d(double curvature, double target) {
  return Problem::quad_diag({{curvature}}, {{target}});
}

Problem ridge_logistic(std::size_t n, std::size_t d, std::uint64_t seed,
                       double lambda) {
  // enough label noise to keep the unregularized problems non-separable
  SynthConfig cfg{n, d, seed, 0.25, 0.5};
  return Problem::logistic(generate_synthetic(cfg), lambda);
}

}  // namespace

TEST_CASE("update step collapses to a scaled gradient step when mu = 0") {
  // single component f(x) = (x+3)^2/2, so the estimator at the snapshot is 3
  Problem p = shifted_quad_1d(1.0, -3.0);
  GradCounter ctr;
  AnitaState st = anita_init(p, 1, {0.0}, Stage1Mode::probabilistic, ctr);
  ScheduleParams params{0.5, 0.5, 1.0, 0.5};  // eta/alpha = 2
  anita_step(p, st, params, 0.0, ctr);
  CHECK(st.x[0] == -6.0);
}

TEST_CASE("hand-executed first iteration on a unit quadratic") {
  // n=1, L=1, x0=1; first-stage parameters are p=1/2, theta=1/2, eta=1/3
  Problem p = shifted_quad_1d(1.0, 0.0);
  StageState fresh;
  ScheduleParams params = general_convex_params(0, fresh, 1, 1.0);
  CHECK(params.p == 0.5);
  CHECK(params.theta == 0.5);
  CHECK(params.eta == 1.0 / 3.0);

  GradCounter ctr;
  AnitaState st = anita_init(p, 7, {1.0}, Stage1Mode::probabilistic, ctr);
  CHECK(ctr.total == 1);
  anita_step(p, st, params, 0.0, ctr);

  CHECK(st.x_under[0] == 1.0);
  CHECK(st.x[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(st.x_bar[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // the interpolation identity bar-x - under-x = theta (x1 - x0)
  CHECK(st.x_bar[0] - st.x_under[0] ==
        doctest::Approx(0.5 * (st.x[0] - 1.0)).epsilon(1e-15));
  if (st.refreshes > 0)
    CHECK(st.cache.w[0] == st.x_bar[0]);
  else
    CHECK(st.cache.w[0] == 1.0);
  CHECK(ctr.total == 3 + (st.refreshes > 0 ? 1 : 0));
}

TEST_CASE("interpolation identity holds along a run") {
  Problem p = ridge_logistic(30, 6, 3, 0.05);
  const double mu = p.strong_convexity();
  ScheduleParams params =
      strongly_convex_params(p.n(), p.smoothness(), mu);
  GradCounter ctr;
  AnitaState st =
      anita_init(p, 11, Vec(p.dim(), 0.0), Stage1Mode::probabilistic, ctr);
  Vec x_old(p.dim());
  for (int t = 0; t < 300; ++t) {
    x_old = st.x;
    Vec w_before = st.cache.w;
    anita_step(p, st, params, mu, ctr);
    for (std::size_t k = 0; k < p.dim(); ++k) {
      double lhs = st.x_bar[k] - st.x_under[k];
      double rhs = params.theta * (st.x[k] - x_old[k]);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
      // interpolations both anchor at the pre-refresh snapshot
      double under = params.theta * x_old[k] + (1.0 - params.theta) * w_before[k];
      CHECK(st.x_under[k] == doctest::Approx(under).epsilon(1e-15));
    }
  }
}

TEST_CASE("budget of exactly n performs no iterations") {
  Problem p = ridge_logistic(40, 5, 9, 0.0);
  Reference ref = solve_reference(p);
  RunResult r = run_anita(p, AnitaMode::general_convex, p.n(), 1, 10,
                          ref.f_star);
  CHECK(r.iterations == 0);
  CHECK(r.output == Vec(p.dim(), 0.0));
  CHECK(r.trace.size() == 1);
  CHECK(r.trace[0].grads == p.n());
  CHECK(r.trace[0].gap ==
        doctest::Approx(p.value(Vec(p.dim(), 0.0)) - ref.f_star));
  CHECK_THROWS_AS(
      run_anita(p, AnitaMode::general_convex, p.n() - 1, 1, 10, ref.f_star),
      std::invalid_argument);
}

TEST_CASE("identical seeds give identical runs") {
  Problem p = ridge_logistic(60, 8, 17, 0.01);
  Reference ref = solve_reference(p);
  for (AnitaMode mode :
       {AnitaMode::general_convex, AnitaMode::strongly_convex}) {
    RunResult a = run_anita(p, mode, 30 * p.n(), 5, 20, ref.f_star);
    RunResult b = run_anita(p, mode, 30 * p.n(), 5, 20, ref.f_star);
    CHECK(a.output == b.output);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
      CHECK(a.trace[k].t == b.trace[k].t);
      CHECK(a.trace[k].grads == b.trace[k].grads);
      CHECK(a.trace[k].gap == b.trace[k].gap);
    }
    RunResult c = run_anita(p, mode, 30 * p.n(), 6, 20, ref.f_star);
    CHECK(a.output != c.output);
  }
  RunResult s1 = run_svrg_loopless(p, 30 * p.n(), 5, ref.f_star, 20);
  RunResult s2 = run_svrg_loopless(p, 30 * p.n(), 5, ref.f_star, 20);
  CHECK(s1.output == s2.output);
}

TEST_CASE("gradient accounting identities") {
  Problem p = ridge_logistic(50, 6, 23, 0.01);
  Reference ref = solve_reference(p);
  const std::size_t n = p.n();

  RunResult gc = run_anita(p, AnitaMode::general_convex, 40 * n, 3, 0,
                           ref.f_star);
  CHECK(gc.grad_total == 2 * gc.iterations + n * (1 + gc.refreshes));
  RunResult sc = run_anita(p, AnitaMode::strongly_convex, 40 * n, 3, 0,
                           ref.f_star);
  CHECK(sc.grad_total == 2 * sc.iterations + n * (1 + sc.refreshes));
  RunResult sv = run_svrg_loopless(p, 40 * n, 3, ref.f_star);
  CHECK(sv.grad_total == 2 * sv.iterations + n * (1 + sv.refreshes));

  RunResult gd = run_gd(p, 40 * n, ref.f_star);
  CHECK(gd.grad_total == n * gd.iterations);
  RunResult agd = run_agd(p, 40 * n, ref.f_star);
  CHECK(agd.grad_total == n * agd.iterations);

  for (const RunResult* r : {&gc, &sc, &sv, &gd, &agd}) {
    for (std::size_t k = 1; k < r->trace.size(); ++k)
      CHECK(r->trace[k].grads >= r->trace[k - 1].grads);
    for (const TraceRecord& rec : r->trace) CHECK(rec.gap >= -1e-12);
    // the reported output is what the final record measured
    CHECK(p.value(r->output) - ref.f_star ==
          doctest::Approx(r->trace.back().gap).epsilon(1e-12));
  }
}

TEST_CASE("gradient descent solves a separable quadratic in one step") {
  Problem p = shifted_quad_1d(1.0, 2.0);
  Reference ref = solve_reference(p);
  CHECK(ref.f_star == 0.0);
  RunResult r = run_gd(p, p.n(), 0.0);
  CHECK(r.iterations == 1);
  CHECK(r.output[0] == 2.0);
  CHECK(r.trace.back().gap == 0.0);
}

TEST_CASE("gradient descent is monotone on logistic loss") {
  Problem p = ridge_logistic(80, 10, 31, 0.0);
  Reference ref = solve_reference(p);
  RunResult r = run_gd(p, 60 * p.n(), ref.f_star);
  for (std::size_t k = 1; k < r.trace.size(); ++k)
    CHECK(r.trace[k].gap <= r.trace[k - 1].gap + 1e-15);
}

TEST_CASE("accelerated descent starts with a plain gradient step") {
  Problem p = ridge_logistic(40, 6, 37, 0.0);
  Reference ref = solve_reference(p);
  RunResult gd = run_gd(p, p.n(), ref.f_star);
  RunResult agd = run_agd(p, p.n(), ref.f_star);
  REQUIRE(gd.output.size() == agd.output.size());
  for (std::size_t k = 0; k < gd.output.size(); ++k)
    CHECK(gd.output[k] == doctest::Approx(agd.output[k]).epsilon(1e-15));
}

TEST_CASE("accelerated descent achieves the fast rate on a quadratic") {
  // diagonal curvature between 0.01 and 1, so kappa = 100
  const std::size_t d = 10;
  Vec coeffs(d), targets(d, 1.0);
  for (std::size_t k = 0; k < d; ++k)
    coeffs[k] = 0.01 + (1.0 - 0.01) * double(k) / double(d - 1);
  Problem p = Problem::quad_diag({coeffs}, {targets});
  CHECK(p.strong_convexity() == doctest::Approx(0.01));
  CHECK(p.smoothness() == doctest::Approx(1.0));
  Reference ref = solve_reference(p);

  RunResult r = run_agd(p, 200 * p.n(), ref.f_star);
  double gap_100 = r.trace[100].gap;
  double gap_200 = r.trace[200].gap;
  double factor = std::pow(1.0 - 0.5 * std::sqrt(0.01 / 1.0), 100.0);
  CHECK(gap_200 <= factor * gap_100);
}

TEST_CASE("loopless svrg degenerates to gradient descent when n = 1") {
  Problem p = shifted_quad_1d(1.0, 2.0);
  RunResult r = run_svrg_loopless(p, 12, 5, 0.0, 1);
  // eta = 1/(4L) = 1/4, so x_{t+1} = x_t + (2 - x_t)/4
  double x = 0.0;
  for (std::size_t t = 1; t < r.trace.size(); ++t) {
    x += 0.25 * (2.0 - x);
    double expected_gap = 0.5 * (x - 2.0) * (x - 2.0);
    CHECK(r.trace[t].gap == doctest::Approx(expected_gap).epsilon(1e-14));
  }
}

TEST_CASE("svrg and anita-sc both close in on a ridge optimum") {
  Problem p = ridge_logistic(100, 8, 41, 0.01);
  Reference ref = solve_reference(p);
  RunResult an = run_anita(p, AnitaMode::strongly_convex, 150 * p.n(), 2, 0,
                           ref.f_star);
  RunResult sv = run_svrg_loopless(p, 150 * p.n(), 2, ref.f_star);
  double gap0 = p.value(Vec(p.dim(), 0.0)) - ref.f_star;
  CHECK(an.trace.back().gap <= gap0 * 1e-4);
  CHECK(sv.trace.back().gap <= gap0 * 1e-2);
}

TEST_CASE("gd gap after 200 passes on the bundled synthetic (frozen)") {
  SynthConfig cfg{1000, 100, 7, 0.05, 0.1};
  Problem p = Problem::logistic(generate_synthetic(cfg), 0.0);
  Reference ref = solve_reference(p);
  RunResult r = run_gd(p, 200 * p.n(), ref.f_star);
  CHECK(r.iterations == 200);
  // recorded once from a verified deterministic run
  CHECK(r.trace.back().gap == 0.10438448974591216);
}

TEST_CASE("passes to gap 1e-6 on a small ridge problem (frozen)") {
  Problem p = ridge_logistic(100, 8, 41, 0.01);
  Reference ref = solve_reference(p);
  auto passes_to_1e6 = [&](const RunResult& r) -> double {
    for (const TraceRecord& rec : r.trace)
      if (rec.gap <= 1e-6) return double(rec.grads) / double(p.n());
    return -1.0;
  };
  RunResult an =
      run_anita(p, AnitaMode::strongly_convex, 400 * p.n(), 2, 1, ref.f_star);
  RunResult sv = run_svrg_loopless(p, 400 * p.n(), 2, ref.f_star, 1);
  CHECK(passes_to_1e6(an) == 23.760000000000002);
  CHECK(passes_to_1e6(sv) == 19.760000000000002);
}

TEST_CASE("deep decay-window horizons stay stable and keep converging") {
  // hundreds of passes put the schedule far into its floor regime, where
  // theta shrinks and the effective update eta/theta keeps growing
  Problem p = ridge_logistic(200, 12, 61, 0.0);
  Reference ref = solve_reference(p);
  RunResult r = run_anita(p, AnitaMode::general_convex, 500 * p.n(), 1, 500,
                          ref.f_star);
  CHECK(r.trace.back().gap <= 1e-10);
  for (const TraceRecord& rec : r.trace) {
    CHECK(std::isfinite(rec.gap));
    CHECK(rec.gap >= -1e-12);
  }
  CHECK(kernels::all_finite(r.output));
}

TEST_CASE("strongly-convex mode requires a strongly convex problem") {
  Problem p = ridge_logistic(20, 4, 43, 0.0);
  CHECK_THROWS_AS(
      run_anita(p, AnitaMode::strongly_convex, 10 * p.n(), 1, 0, 0.0),
      std::invalid_argument);
}

TEST_CASE("an oversized stepsize raises a divergence error") {
  Problem p = shifted_quad_1d(10.0, -3.0);
  GradCounter ctr;
  AnitaState st = anita_init(p, 1, {1.0}, Stage1Mode::probabilistic, ctr);
  ScheduleParams params{0.5, 0.5, 1e308, 0.5};
  CHECK_THROWS_AS(anita_step(p, st, params, 0.0, ctr), DivergenceError);
  try {
    GradCounter c2;
    AnitaState st2 = anita_init(p, 1, {1.0}, Stage1Mode::probabilistic, c2);
    anita_step(p, st2, params, 0.0, c2);
  } catch (const DivergenceError& e) {
    CHECK(e.iteration() == 0);
  }
}

TEST_CASE("snapshot probability override changes the refresh cadence") {
  Problem p = ridge_logistic(100, 8, 53, 0.01);
  Reference ref = solve_reference(p);
  AnitaOptions dense_opts;
  dense_opts.p_override = 0.2;  // default would be 1/n = 0.01
  RunResult dense = run_anita(p, AnitaMode::strongly_convex, 50 * p.n(), 4, 0,
                              ref.f_star, dense_opts);
  RunResult sparse = run_anita(p, AnitaMode::strongly_convex, 50 * p.n(), 4, 0,
                               ref.f_star);
  // more refreshes, and the budget is eaten in far fewer iterations
  CHECK(dense.refreshes > 2 * sparse.refreshes);
  CHECK(dense.iterations < sparse.iterations / 4);
  CHECK(dense.grad_total == 2 * dense.iterations + p.n() * (1 + dense.refreshes));
}

TEST_CASE("the first refresh time is recorded exactly once") {
  Problem p = ridge_logistic(20, 4, 59, 0.0);
  GradCounter ctr;
  AnitaState st =
      anita_init(p, 13, Vec(p.dim(), 0.0), Stage1Mode::probabilistic, ctr);
  std::optional<std::uint64_t> seen;
  for (int t = 0; t < 400; ++t) {
    ScheduleParams params =
        general_convex_params(st.t, st.stage, p.n(), p.smoothness());
    std::uint64_t before = st.refreshes;
    anita_step(p, st, params, 0.0, ctr);
    if (!seen && st.refreshes > before) seen = st.t - 1;
    if (seen) {
      REQUIRE(st.stage.t1_observed.has_value());
      CHECK(*st.stage.t1_observed == *seen);  // never moves after being set
    } else {
      CHECK_FALSE(st.stage.t1_observed.has_value());
    }
  }
  CHECK(seen.has_value());  // p = 1/21 over 400 draws
}

TEST_CASE("derandomized first stage refreshes exactly at t = n") {
  Problem p = ridge_logistic(30, 5, 47, 0.0);
  Reference ref = solve_reference(p);
  AnitaOptions opts;
  opts.stage1 = Stage1Mode::derandomized;
  RunResult r = run_anita(p, AnitaMode::general_convex, 8 * p.n(), 1, 0,
                          ref.f_star, opts);
  // the first refresh record sits at iteration n+1's boundary: t = n+1
  bool seen = false;
  for (const TraceRecord& rec : r.trace)
    if (rec.t == p.n() + 1) seen = true;
  CHECK(seen);
  // no refresh before it: records between 0 and n+1 would only come from
  // cadence logging, which is off
  for (const TraceRecord& rec : r.trace)
    CHECK((rec.t == 0 || rec.t >= p.n() + 1));
}
