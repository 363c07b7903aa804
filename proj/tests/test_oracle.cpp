#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "anita/oracle.hpp"
#include "anita/problems.hpp"

using namespace anita;

TEST_CASE("closed form for a shifted quadratic") {
  Problem p = Problem::quad_diag({{1.0, 1.0}}, {{1.0, 2.0}});
  Reference ref = solve_reference(p);
  CHECK(ref.method == ReferenceMethod::closed_form);
  CHECK(ref.x_star[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ref.x_star[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ref.f_star == doctest::Approx(0.0));
  CHECK(ref.grad_norm_at_xstar <= 1e-10 * (1.0 + p.smoothness()));
}

TEST_CASE("closed form drops unconstrained coordinates at zero") {
  Problem p = Problem::quad_diag({{2.0, 0.0}}, {{3.0, 9.0}});
  Reference ref = solve_reference(p);
  CHECK(ref.x_star[0] == doctest::Approx(3.0));
  CHECK(ref.x_star[1] == 0.0);
}

TEST_CASE("least squares solves through the normal equations") {
  SparseDataset ds = parse_libsvm("1 1:1\n-1 2:1\n1 1:1 2:1\n");
  Problem p = Problem::least_squares(std::move(ds), 0.1);
  Reference ref = solve_reference(p);
  CHECK(ref.method == ReferenceMethod::closed_form);
  Vec g(p.dim());
  p.full_grad(ref.x_star, g);
  double gn = std::sqrt(g[0] * g[0] + g[1] * g[1]);
  CHECK(gn <= 1e-12);
  // every other point sits above f*
  CHECK(p.value(Vec{0.3, -0.7}) >= ref.f_star - 1e-12);
  CHECK(p.value(Vec{0.0, 0.0}) >= ref.f_star - 1e-12);
}

TEST_CASE("one-dimensional regularized logistic against bisection") {
  SparseDataset ds = parse_libsvm("1 1:1\n");
  Problem p = Problem::logistic(std::move(ds), 0.1);

  // root of -sigmoid(-x) + 0.1 x by bisection on the derivative
  auto deriv = [](double x) {
    return -1.0 / (1.0 + std::exp(x)) + 0.1 * x;
  };
  double lo = 1.0, hi = 2.0;
  REQUIRE(deriv(lo) < 0.0);
  REQUIRE(deriv(hi) > 0.0);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    (deriv(mid) <= 0.0 ? lo : hi) = mid;
  }
  double x_bis = 0.5 * (lo + hi);
  double f_bis = p.value(Vec{x_bis});

  Reference ref = solve_reference(p);
  CHECK(ref.method == ReferenceMethod::high_precision_agd);
  CHECK(ref.f_star == doctest::Approx(f_bis).epsilon(1e-12));
  CHECK(std::abs(ref.x_star[0] - x_bis) <= 1e-6);
  CHECK(ref.grad_norm_at_xstar <= 1e-10 * (1.0 + p.smoothness()));
}

TEST_CASE("a symmetric dataset pins the optimum at the origin") {
  SparseDataset ds = parse_libsvm("1 1:0.6 2:0.8\n-1 1:0.6 2:0.8\n");
  Problem p = Problem::logistic(std::move(ds), 0.05);
  Reference ref = solve_reference(p);
  CHECK(std::abs(ref.x_star[0]) <= 1e-9);
  CHECK(std::abs(ref.x_star[1]) <= 1e-9);
  CHECK(ref.f_star == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("closed-form and iterative references agree") {
  Problem p = Problem::quad_diag({{0.5, 2.0, 1.0}, {1.5, 0.5, 1.0}},
                                 {{1.0, -1.0, 0.5}, {-0.5, 0.5, 0.2}});
  Reference closed = solve_reference(p);
  Reference iter = solve_reference_iterative(p);
  CHECK(std::abs(closed.f_star - iter.f_star) <= 1e-10);
}

TEST_CASE("finite differences on quadratics are exact at any step") {
  Problem p = Problem::quad_diag({{2.0, 0.7}}, {{0.3, -0.4}});
  Vec x = {1.1, -0.6};
  Vec g(2);
  p.component_grad(0, x, g);
  for (double h : {1e-5, 1.0}) {
    Vec fd = finite_diff_grad(p, 0, x, h);
    CHECK(std::abs(fd[0] - g[0]) <= 1e-9);
    CHECK(std::abs(fd[1] - g[1]) <= 1e-9);
  }
  CHECK_THROWS_AS(finite_diff_grad(p, 0, x, 0.0), std::invalid_argument);
}

TEST_CASE("iterative reference caps out with a report") {
  SparseDataset ds = parse_libsvm("1 1:1\n-1 2:1\n1 1:0.5 2:0.5\n");
  Problem p = Problem::logistic(std::move(ds), 0.01);
  ReferenceSettings strict;
  strict.max_iterations = 3;  // far too few on purpose
  CHECK_THROWS_AS(solve_reference(p, strict), ReferenceError);
  strict.accept_degraded = true;
  Reference ref = solve_reference(p, strict);
  CHECK(ref.iterations == 3);
  CHECK(ref.grad_norm_at_xstar > 1e-12);
}

TEST_CASE("reference cache round trip and reuse") {
  namespace fs = std::filesystem;
  fs::path file = fs::temp_directory_path() / "anita_test_fstar_cache.txt";
  fs::remove(file);

  ReferenceCache cache;
  cache[0x0123456789abcdefULL] = {0.12345678901234567, 9.9e-13, "agd", 321};
  cache[0x1ULL] = {-3.5, 0.0, "closed_form", 0};
  save_reference_cache(file, cache);
  ReferenceCache loaded = load_reference_cache(file);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded.at(0x0123456789abcdefULL).f_star == 0.12345678901234567);
  CHECK(loaded.at(0x0123456789abcdefULL).method == "agd");
  CHECK(loaded.at(0x0123456789abcdefULL).iters == 321);
  CHECK(loaded.at(0x1ULL).f_star == -3.5);

  fs::remove(file);
  Problem p = Problem::quad_diag({{1.0}}, {{2.0}});
  double f1 = resolve_fstar(p, file);
  REQUIRE(fs::exists(file));
  // second resolution must come from the file and be bit-identical
  double f2 = resolve_fstar(p, file);
  CHECK(f1 == f2);
  ReferenceCache after = load_reference_cache(file);
  CHECK(after.count(p.content_hash()) == 1);
  fs::remove(file);
}
