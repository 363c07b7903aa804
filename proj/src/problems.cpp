#include "anita/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "anita/kernels.hpp"

namespace anita {

double stable_sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double t) {
  if (t <= 0.0) return std::log1p(std::exp(t));
  return t + std::log1p(std::exp(-t));
}

Problem Problem::logistic(SparseDataset ds, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("logistic: lambda < 0");
  if (ds.n_samples() == 0) throw std::invalid_argument("logistic: empty dataset");
  Problem p;
  p.kind_ = ProblemKind::logistic;
  p.n_ = ds.n_samples();
  p.dim_ = ds.n_features();
  p.lambda_ = lambda;
  p.smoothness_L_ = 0.25 * ds.max_row_squared_norm() + lambda;
  p.strong_mu_ = lambda;
  p.payload_ = DataPayload{std::move(ds)};
  return p;
}

Problem Problem::least_squares(SparseDataset ds, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("least_squares: lambda < 0");
  if (ds.n_samples() == 0)
    throw std::invalid_argument("least_squares: empty dataset");
  Problem p;
  p.kind_ = ProblemKind::least_squares;
  p.n_ = ds.n_samples();
  p.dim_ = ds.n_features();
  p.lambda_ = lambda;
  p.smoothness_L_ = ds.max_row_squared_norm() + lambda;
  // lambda lower-bounds the strong convexity of the average; the data part
  // of the Hessian is only known to be PSD.
  p.strong_mu_ = lambda;
  p.payload_ = DataPayload{std::move(ds)};
  return p;
}

Problem Problem::quad_diag(std::vector<Vec> coeffs, std::vector<Vec> targets) {
  if (coeffs.empty() || coeffs.size() != targets.size())
    throw std::invalid_argument("quad_diag: bad shape");
  std::size_t d = coeffs[0].size();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].size() != d || targets[i].size() != d)
      throw std::invalid_argument("quad_diag: ragged rows");
    for (double c : coeffs[i])
      if (c < 0.0) throw std::invalid_argument("quad_diag: negative curvature");
  }
  Problem p;
  p.kind_ = ProblemKind::quad_diag;
  p.n_ = coeffs.size();
  p.dim_ = d;
  double L = 0.0;
  for (const auto& ci : coeffs)
    for (double c : ci) L = std::max(L, c);
  // mean Hessian is diagonal; its extreme eigenvalues are exact
  double mu = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < d; ++k) {
    double mean_c = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) mean_c += coeffs[i][k];
    mu = std::min(mu, mean_c / double(coeffs.size()));
  }
  p.smoothness_L_ = L;
  p.strong_mu_ = d == 0 ? 0.0 : mu;
  p.payload_ = QuadPayload{std::move(coeffs), std::move(targets)};
  return p;
}

const SparseDataset* Problem::dataset() const {
  if (const auto* d = std::get_if<DataPayload>(&payload_)) return &d->ds;
  return nullptr;
}

double Problem::component_value(std::size_t i, std::span<const double> x) const {
  if (i >= n_) throw std::out_of_range("component index out of range");
  switch (kind_) {
    case ProblemKind::logistic: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      auto r = ds.row(i);
      double z = ds.label(i) * kernels::sparse_dot(r.idx, r.val, x);
      double reg = lambda_ > 0.0 ? 0.5 * lambda_ * kernels::squared_norm(x) : 0.0;
      return softplus(-z) + reg;
    }
    case ProblemKind::least_squares: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      auto r = ds.row(i);
      double res = kernels::sparse_dot(r.idx, r.val, x) - ds.label(i);
      double reg = lambda_ > 0.0 ? 0.5 * lambda_ * kernels::squared_norm(x) : 0.0;
      return 0.5 * res * res + reg;
    }
    case ProblemKind::quad_diag: {
      const auto& q = std::get<QuadPayload>(payload_);
      double s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        double dxy = x[k] - q.targets[i][k];
        s += q.coeffs[i][k] * dxy * dxy;
      }
      return 0.5 * s;
    }
  }
  return 0.0;
}

void Problem::component_grad(std::size_t i, std::span<const double> x,
                             std::span<double> out) const {
  if (i >= n_) throw std::out_of_range("component index out of range");
  switch (kind_) {
    case ProblemKind::logistic: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      auto r = ds.row(i);
      double b = ds.label(i);
      double z = b * kernels::sparse_dot(r.idx, r.val, x);
      double coef = -b * stable_sigmoid(-z);
      if (lambda_ > 0.0) {
        for (std::size_t k = 0; k < dim_; ++k) out[k] = lambda_ * x[k];
      } else {
        std::fill(out.begin(), out.end(), 0.0);
      }
      kernels::sparse_axpy(coef, r.idx, r.val, out);
      return;
    }
    case ProblemKind::least_squares: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      auto r = ds.row(i);
      double res = kernels::sparse_dot(r.idx, r.val, x) - ds.label(i);
      if (lambda_ > 0.0) {
        for (std::size_t k = 0; k < dim_; ++k) out[k] = lambda_ * x[k];
      } else {
        std::fill(out.begin(), out.end(), 0.0);
      }
      kernels::sparse_axpy(res, r.idx, r.val, out);
      return;
    }
    case ProblemKind::quad_diag: {
      const auto& q = std::get<QuadPayload>(payload_);
      for (std::size_t k = 0; k < dim_; ++k)
        out[k] = q.coeffs[i][k] * (x[k] - q.targets[i][k]);
      return;
    }
  }
}

double Problem::value(std::span<const double> x) const {
  switch (kind_) {
    case ProblemKind::logistic: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      double s = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        auto r = ds.row(i);
        double z = ds.label(i) * kernels::sparse_dot(r.idx, r.val, x);
        s += softplus(-z);
      }
      double reg = lambda_ > 0.0 ? 0.5 * lambda_ * kernels::squared_norm(x) : 0.0;
      return s / double(n_) + reg;
    }
    case ProblemKind::least_squares: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      double s = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        auto r = ds.row(i);
        double res = kernels::sparse_dot(r.idx, r.val, x) - ds.label(i);
        s += 0.5 * res * res;
      }
      double reg = lambda_ > 0.0 ? 0.5 * lambda_ * kernels::squared_norm(x) : 0.0;
      return s / double(n_) + reg;
    }
    case ProblemKind::quad_diag: {
      double s = 0.0;
      for (std::size_t i = 0; i < n_; ++i) s += component_value(i, x);
      return s / double(n_);
    }
  }
  return 0.0;
}

void Problem::full_grad(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  switch (kind_) {
    case ProblemKind::logistic: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      for (std::size_t i = 0; i < n_; ++i) {
        auto r = ds.row(i);
        double b = ds.label(i);
        double z = b * kernels::sparse_dot(r.idx, r.val, x);
        kernels::sparse_axpy(-b * stable_sigmoid(-z), r.idx, r.val, out);
      }
      kernels::scal(1.0 / double(n_), out);
      if (lambda_ > 0.0) kernels::axpy(lambda_, x, out);
      return;
    }
    case ProblemKind::least_squares: {
      const auto& ds = std::get<DataPayload>(payload_).ds;
      for (std::size_t i = 0; i < n_; ++i) {
        auto r = ds.row(i);
        double res = kernels::sparse_dot(r.idx, r.val, x) - ds.label(i);
        kernels::sparse_axpy(res, r.idx, r.val, out);
      }
      kernels::scal(1.0 / double(n_), out);
      if (lambda_ > 0.0) kernels::axpy(lambda_, x, out);
      return;
    }
    case ProblemKind::quad_diag: {
      const auto& q = std::get<QuadPayload>(payload_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < dim_; ++k)
          out[k] += q.coeffs[i][k] * (x[k] - q.targets[i][k]);
      kernels::scal(1.0 / double(n_), out);
      return;
    }
  }
}

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void mix(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  void mix(double v) { mix(std::bit_cast<std::uint64_t>(v)); }
};

}  // namespace

std::uint64_t Problem::content_hash() const {
  Fnv1a f;
  f.mix(std::uint64_t(kind_));
  f.mix(std::uint64_t(n_));
  f.mix(std::uint64_t(dim_));
  f.mix(lambda_);
  if (const SparseDataset* ds = dataset()) {
    for (std::size_t i = 0; i < ds->n_samples(); ++i) {
      auto r = ds->row(i);
      f.mix(ds->label(i));
      f.mix(std::uint64_t(r.nnz()));
      for (std::size_t k = 0; k < r.nnz(); ++k) {
        f.mix(std::uint64_t(r.idx[k]));
        f.mix(r.val[k]);
      }
    }
  } else {
    const auto& q = std::get<QuadPayload>(payload_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        f.mix(q.coeffs[i][k]);
        f.mix(q.targets[i][k]);
      }
  }
  return f.h;
}

}  // namespace anita
