#include "anita/vrgrad.hpp"

#include <stdexcept>

#include "anita/kernels.hpp"

namespace anita {

void estimate(const Problem& p, const SnapshotCache& cache,
              std::span<const double> u, std::size_t i, GradCounter& ctr,
              std::span<double> out) {
  if (i >= p.n()) throw std::out_of_range("estimate: component index");
  thread_local Vec gu, gw;
  gu.resize(p.dim());
  gw.resize(p.dim());
  p.component_grad(i, u, gu);
  p.component_grad(i, cache.w, gw);
  ctr.total += 2;
  // (gu - gw) + grad_w, associated so that gu == gw cancels exactly
  kernels::lincomb3(1.0, gu, -1.0, gw, 1.0, cache.grad_w, out);
}

void refresh_snapshot(const Problem& p, SnapshotCache& cache, Vec new_w,
                      GradCounter& ctr) {
  cache.w = std::move(new_w);
  cache.grad_w.resize(p.dim());
  p.full_grad(cache.w, cache.grad_w);
  cache.f_w = p.value(cache.w);
  ctr.total += p.n();
}

double exhaustive_variance(const Problem& p, const SnapshotCache& cache,
                           std::span<const double> u) {
  Vec gu(p.dim()), gw(p.dim()), grad_u(p.dim()), diff(p.dim());
  p.full_grad(u, grad_u);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    p.component_grad(i, u, gu);
    p.component_grad(i, cache.w, gw);
    for (std::size_t k = 0; k < p.dim(); ++k)
      diff[k] = ((gu[k] - gw[k]) + cache.grad_w[k]) - grad_u[k];
    acc += kernels::squared_norm(diff);
  }
  return acc / double(p.n());
}

}  // namespace anita
