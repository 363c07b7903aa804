#include "anita/kernels.hpp"

// Reference backend. The striped reduction order below is the contract every
// other backend must reproduce bit for bit.

namespace anita::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t m = n - n % 4;
  for (std::size_t k = 0; k < m; k += 4) {
    a0 += x[k] * y[k];
    a1 += x[k + 1] * y[k + 1];
    a2 += x[k + 2] * y[k + 2];
    a3 += x[k + 3] * y[k + 3];
  }
  double s = (a0 + a2) + (a1 + a3);
  for (std::size_t k = m; k < n; ++k) s += x[k] * y[k];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void lincomb_scalar(double a, const double* x, double b, const double* y,
                    double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a * x[k] + b * y[k];
}

void lincomb3_scalar(double a, const double* x, double b, const double* y,
                     double c, const double* z, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    out[k] = (a * x[k] + b * y[k]) + c * z[k];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) x[k] *= a;
}

double sparse_dot_scalar(const std::uint32_t* idx, const double* val,
                         std::size_t nnz, const double* dense) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t m = nnz - nnz % 4;
  for (std::size_t k = 0; k < m; k += 4) {
    a0 += val[k] * dense[idx[k]];
    a1 += val[k + 1] * dense[idx[k + 1]];
    a2 += val[k + 2] * dense[idx[k + 2]];
    a3 += val[k + 3] * dense[idx[k + 3]];
  }
  double s = (a0 + a2) + (a1 + a3);
  for (std::size_t k = m; k < nnz; ++k) s += val[k] * dense[idx[k]];
  return s;
}

void sparse_axpy_scalar(double a, const std::uint32_t* idx, const double* val,
                        std::size_t nnz, double* dense) {
  for (std::size_t k = 0; k < nnz; ++k) dense[idx[k]] += a * val[k];
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",        dot_scalar,        axpy_scalar,       lincomb_scalar,
      lincomb3_scalar, scal_scalar,       sparse_dot_scalar, sparse_axpy_scalar,
  };
  return ops;
}

}  // namespace anita::kernels
