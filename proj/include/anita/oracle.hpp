#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "anita/problems.hpp"

namespace anita {

enum class ReferenceMethod { closed_form, high_precision_agd };

// High-precision reference solution for a problem: the minimizer, its value,
// and the gradient norm certifying it.
struct Reference {
  Vec x_star;
  double f_star = 0.0;
  double grad_norm_at_xstar = 0.0;
  ReferenceMethod method = ReferenceMethod::closed_form;
  std::uint64_t iterations = 0;
};

class ReferenceError : public std::runtime_error {
 public:
  ReferenceError(const std::string& what, double achieved_grad_norm);
  double achieved_grad_norm() const { return achieved_; }

 private:
  double achieved_;
};

struct ReferenceSettings {
  double grad_tol = 1e-12;
  std::uint64_t max_iterations = 1'000'000;
  // When true, an iterative solve that exhausts max_iterations returns the
  // best iterate instead of throwing.
  bool accept_degraded = false;
};

// Diagonal quadratics and least squares solve in closed form (coordinate
// formula / normal equations); logistic runs deterministic full-gradient
// Nesterov descent with adaptive restart until the gradient-norm target.
Reference solve_reference(const Problem& p, const ReferenceSettings& = {});

// Forces the iterative path regardless of problem kind (cross-checks the
// closed forms).
Reference solve_reference_iterative(const Problem& p,
                                    const ReferenceSettings& = {});

// Central difference of f_i, one coordinate at a time.
Vec finite_diff_grad(const Problem& p, std::size_t i, std::span<const double> x,
                     double h);

// --- persistent f* cache -------------------------------------------------
//
// Text file holding one record per problem hash (x_star is not stored):
//
//   problem <16 hex digits>
//   f_star <value, 17 significant digits>
//   grad_norm <value>
//   method closed_form|agd
//   iters <count>
//
// Records are separated by blank lines and kept sorted by hash.

struct ReferenceCacheEntry {
  double f_star = 0.0;
  double grad_norm = 0.0;
  std::string method;
  std::uint64_t iters = 0;
};

using ReferenceCache = std::map<std::uint64_t, ReferenceCacheEntry>;

ReferenceCache load_reference_cache(const std::filesystem::path& file);
void save_reference_cache(const std::filesystem::path& file,
                          const ReferenceCache& cache);

// Returns the cached f* for the problem, solving and updating the cache file
// on a miss. Without a path, always solves.
double resolve_fstar(const Problem& p,
                     const std::optional<std::filesystem::path>& cache_file,
                     const ReferenceSettings& = {});

}  // namespace anita
