#include "anita/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "anita/kernels.hpp"

namespace anita {

ReferenceError::ReferenceError(const std::string& what, double achieved)
    : std::runtime_error(what), achieved_(achieved) {}

namespace {

Reference solve_quad_closed_form(const Problem& p) {
  // Per coordinate: x*_k = sum_i c_ik z_ik / sum_i c_ik. A coordinate with
  // zero total curvature does not appear in f; pin it at 0.
  Vec num(p.dim(), 0.0), den(p.dim(), 0.0), x(p.dim(), 0.0);
  Vec g(p.dim());
  for (std::size_t i = 0; i < p.n(); ++i) {
    p.component_grad(i, x, g);  // = c_i .* (0 - z_i)
    for (std::size_t k = 0; k < p.dim(); ++k) num[k] -= g[k];
  }
  Vec probe(p.dim(), 1.0);
  Vec g1(p.dim());
  for (std::size_t i = 0; i < p.n(); ++i) {
    p.component_grad(i, probe, g1);
    p.component_grad(i, x, g);
    for (std::size_t k = 0; k < p.dim(); ++k) den[k] += g1[k] - g[k];  // c_ik
  }
  Reference ref;
  ref.x_star.assign(p.dim(), 0.0);
  for (std::size_t k = 0; k < p.dim(); ++k)
    ref.x_star[k] = den[k] > 0.0 ? num[k] / den[k] : 0.0;
  ref.f_star = p.value(ref.x_star);
  Vec grad(p.dim());
  p.full_grad(ref.x_star, grad);
  ref.grad_norm_at_xstar = std::sqrt(kernels::squared_norm(grad));
  ref.method = ReferenceMethod::closed_form;
  return ref;
}

// Cholesky solve of (H + lambda I) x = rhs with H the mean outer-product
// matrix of the rows. Returns false on a non-positive pivot.
bool normal_equations(const Problem& p, Vec& x_out) {
  const SparseDataset& ds = *p.dataset();
  const std::size_t d = p.dim();
  std::vector<double> H(d * d, 0.0);
  Vec rhs(d, 0.0);
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    auto r = ds.row(i);
    for (std::size_t a = 0; a < r.nnz(); ++a) {
      rhs[r.idx[a]] += ds.label(i) * r.val[a];
      for (std::size_t b = 0; b <= a; ++b)
        H[std::size_t(r.idx[a]) * d + r.idx[b]] += r.val[a] * r.val[b];
    }
  }
  double inv_n = 1.0 / double(p.n());
  for (auto& h : H) h *= inv_n;
  for (auto& v : rhs) v *= inv_n;
  for (std::size_t k = 0; k < d; ++k) H[k * d + k] += p.lambda();

  // in-place lower Cholesky on the packed lower triangle
  std::vector<double> Lm(H);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = Lm[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= Lm[j * d + k] * Lm[j * d + k];
    if (diag <= 0.0) return false;
    diag = std::sqrt(diag);
    Lm[j * d + j] = diag;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = Lm[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= Lm[i * d + k] * Lm[j * d + k];
      Lm[i * d + j] = s / diag;
    }
  }
  Vec y(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= Lm[i * d + k] * y[k];
    y[i] = s / Lm[i * d + i];
  }
  x_out.assign(d, 0.0);
  for (std::size_t ii = d; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < d; ++k) s -= Lm[k * d + ii] * x_out[k];
    x_out[ii] = s / Lm[ii * d + ii];
  }
  return true;
}

Reference solve_lsq_closed_form(const Problem& p) {
  Vec x;
  if (!normal_equations(p, x))
    throw ReferenceError("least squares: singular normal equations", HUGE_VAL);
  Reference ref;
  ref.x_star = std::move(x);
  ref.f_star = p.value(ref.x_star);
  Vec grad(p.dim());
  p.full_grad(ref.x_star, grad);
  ref.grad_norm_at_xstar = std::sqrt(kernels::squared_norm(grad));
  ref.method = ReferenceMethod::closed_form;
  return ref;
}

}  // namespace

Reference solve_reference_iterative(const Problem& p,
                                    const ReferenceSettings& settings) {
  const double L = p.smoothness();
  const double mu = p.strong_convexity();
  const double eta = 1.0 / L;
  const bool strongly = mu > 0.0;
  const double beta_sc =
      strongly ? (std::sqrt(L) - std::sqrt(mu)) / (std::sqrt(L) + std::sqrt(mu))
               : 0.0;

  const std::size_t d = p.dim();
  Vec x(d, 0.0), x_prev(d, 0.0), y(d), g(d), step(d);
  // best iterate = lowest gradient norm among points with (near-)lowest f
  Vec best_x = x;
  double best_f = p.value(x);
  double best_gn = HUGE_VAL;

  std::uint64_t since_restart = 0;
  std::uint64_t t = 0;
  for (; t < settings.max_iterations; ++t) {
    double beta = strongly ? beta_sc
                           : double(since_restart) / double(since_restart + 3);
    kernels::lincomb(1.0 + beta, x, -beta, x_prev, y);
    p.full_grad(y, g);
    double gn = std::sqrt(kernels::squared_norm(g));
    double fy = p.value(y);
    if (fy < best_f) best_f = fy;
    if (gn < best_gn && fy <= best_f + 1e-15 * (1.0 + std::abs(best_f))) {
      best_x = y;
      best_gn = gn;
    }
    if (best_gn <= settings.grad_tol) break;

    std::swap(x_prev, x);
    kernels::lincomb(1.0, y, -eta, g, x);
    ++since_restart;
    // momentum restart when the step opposes the gradient flow
    if (!strongly) {
      for (std::size_t k = 0; k < d; ++k) step[k] = x[k] - x_prev[k];
      if (kernels::dot(g, step) > 0.0) since_restart = 0;
    }
  }

  if (best_gn > settings.grad_tol && !settings.accept_degraded) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "reference solve: gradient norm %.3e above target %.0e "
                  "after %llu iterations",
                  best_gn, settings.grad_tol, (unsigned long long)t);
    throw ReferenceError(msg, best_gn);
  }

  Reference ref;
  ref.f_star = std::min(best_f, p.value(best_x));
  ref.x_star = std::move(best_x);
  ref.grad_norm_at_xstar = best_gn;
  ref.method = ReferenceMethod::high_precision_agd;
  ref.iterations = t;
  return ref;
}

Reference solve_reference(const Problem& p, const ReferenceSettings& settings) {
  switch (p.kind()) {
    case ProblemKind::quad_diag:
      return solve_quad_closed_form(p);
    case ProblemKind::least_squares:
      return solve_lsq_closed_form(p);
    case ProblemKind::logistic:
      return solve_reference_iterative(p, settings);
  }
  throw std::logic_error("unreachable");
}

Vec finite_diff_grad(const Problem& p, std::size_t i, std::span<const double> x,
                     double h) {
  if (h <= 0.0) throw std::invalid_argument("finite_diff_grad: h must be > 0");
  Vec probe(x.begin(), x.end()), out(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) {
    double xk = probe[k];
    probe[k] = xk + h;
    double fp = p.component_value(i, probe);
    probe[k] = xk - h;
    double fm = p.component_value(i, probe);
    probe[k] = xk;
    out[k] = (fp - fm) / (2.0 * h);
  }
  return out;
}

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace

ReferenceCache load_reference_cache(const std::filesystem::path& file) {
  ReferenceCache cache;
  std::ifstream in(file);
  if (!in) return cache;
  std::string line;
  std::optional<std::uint64_t> hash;
  ReferenceCacheEntry entry;
  auto flush = [&] {
    if (hash) cache[*hash] = entry;
    hash.reset();
    entry = {};
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') {
      flush();
      continue;
    }
    std::istringstream ls(line);
    std::string key, val;
    ls >> key >> val;
    if (key == "problem") {
      flush();
      hash = std::stoull(val, nullptr, 16);
    } else if (key == "f_star") {
      entry.f_star = std::stod(val);
    } else if (key == "grad_norm") {
      entry.grad_norm = std::stod(val);
    } else if (key == "method") {
      entry.method = val;
    } else if (key == "iters") {
      entry.iters = std::stoull(val);
    }
  }
  flush();
  return cache;
}

void save_reference_cache(const std::filesystem::path& file,
                          const ReferenceCache& cache) {
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write cache file " + file.string());
    char num[64];
    for (const auto& [hash, entry] : cache) {
      out << "problem " << hash_hex(hash) << "\n";
      std::snprintf(num, sizeof num, "%.17g", entry.f_star);
      out << "f_star " << num << "\n";
      std::snprintf(num, sizeof num, "%.17g", entry.grad_norm);
      out << "grad_norm " << num << "\n";
      out << "method " << entry.method << "\n";
      out << "iters " << entry.iters << "\n\n";
    }
  }
  std::filesystem::rename(tmp, file);
}

double resolve_fstar(const Problem& p,
                     const std::optional<std::filesystem::path>& cache_file,
                     const ReferenceSettings& settings) {
  std::uint64_t key = p.content_hash();
  ReferenceCache cache;
  if (cache_file) {
    cache = load_reference_cache(*cache_file);
    if (auto it = cache.find(key); it != cache.end()) return it->second.f_star;
  }
  Reference ref = solve_reference(p, settings);
  if (cache_file) {
    cache[key] = {ref.f_star, ref.grad_norm_at_xstar,
                  ref.method == ReferenceMethod::closed_form ? "closed_form"
                                                             : "agd",
                  ref.iterations};
    save_reference_cache(*cache_file, cache);
  }
  return ref.f_star;
}

}  // namespace anita
