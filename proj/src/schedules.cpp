#include "anita/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anita {

ScheduleParams general_convex_params(std::uint64_t t, const StageState& stage,
                                     std::size_t n, double L) {
  if (n < 1) throw std::invalid_argument("schedule: n must be >= 1");
  if (L <= 0.0) throw std::invalid_argument("schedule: L must be > 0");

  double root_n = std::sqrt(double(n));
  bool in_stage1 = !stage.t1_observed || t <= *stage.t1_observed;
  if (!stage.t1_observed && stage.mode == Stage1Mode::derandomized && t > n)
    throw std::logic_error(
        "schedule: iteration past the forced refresh with t1 unobserved");

  ScheduleParams sp;
  if (in_stage1) {
    sp.p = 1.0 / double(n + 1);
    sp.theta = 1.0 - 1.0 / (2.0 * root_n);
    sp.eta = 1.0 / (L * (1.0 + 2.0 * root_n));
    sp.alpha = sp.theta;
  } else {
    double s = double(t - *stage.t1_observed) + 3.0 * root_n;
    sp.p = std::max(4.0 / s, 4.0 / double(n + 3));
    sp.theta = 2.0 / (sp.p * s);
    sp.eta = 1.0 / (3.0 * L);
    sp.alpha = sp.theta;
  }
  return sp;
}

ScheduleParams strongly_convex_params(std::size_t n, double L, double mu,
                                      std::optional<double> p_override) {
  if (mu <= 0.0)
    throw std::invalid_argument(
        "schedule: mu must be > 0; use the general-convex rule otherwise");
  if (L < mu) throw std::invalid_argument("schedule: L must be >= mu");
  if (n < 1) throw std::invalid_argument("schedule: n must be >= 1");

  ScheduleParams sp;
  sp.p = p_override.value_or(1.0 / double(n));
  if (sp.p <= 0.0 || sp.p > 1.0)
    throw std::invalid_argument("schedule: p must be in (0,1]");
  sp.theta = 0.5 * std::min(1.0, std::sqrt(mu / (sp.p * L)));
  sp.eta = 1.0 / (L * sp.theta * (1.0 + 1.0 / (1.0 - sp.theta)));
  sp.alpha = 1.0 + mu * sp.eta;
  return sp;
}

std::uint64_t stage_boundary(std::size_t n) {
  if (n < 1) throw std::invalid_argument("schedule: n must be >= 1");
  double off = double(n) + 3.0 - 3.0 * std::sqrt(double(n));
  return std::uint64_t(std::floor(off));
}

}  // namespace anita
