#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Dense and sparse vector kernels used by all solver inner loops.
//
// Two backends exist: a scalar reference and an AVX2 variant, selected at
// runtime (AVX2 when the CPU supports it, overridable via the ANITA_KERNELS
// environment variable or kernels::select()). Both backends produce
// bit-identical results: reductions accumulate into four independent lanes
// striped by position, the lanes are combined as (l0+l2)+(l1+l3), and the
// remainder elements are then added left to right. Elementwise ops evaluate
// each coordinate as written, with no FMA contraction.

namespace anita::kernels {

struct Ops {
  const char* name;

  // sum_k x[k]*y[k]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[k] += a*x[k]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[k] = a*x[k] + b*y[k]
  void (*lincomb)(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n);
  // out[k] = (a*x[k] + b*y[k]) + c*z[k]
  void (*lincomb3)(double a, const double* x, double b, const double* y,
                   double c, const double* z, double* out, std::size_t n);
  // x[k] *= a
  void (*scal)(double a, double* x, std::size_t n);
  // sum_k val[k] * dense[idx[k]]
  double (*sparse_dot)(const std::uint32_t* idx, const double* val,
                       std::size_t nnz, const double* dense);
  // dense[idx[k]] += a*val[k]
  void (*sparse_axpy)(double a, const std::uint32_t* idx, const double* val,
                      std::size_t nnz, double* dense);
};

const Ops& scalar_ops();
// nullptr when the running CPU lacks AVX2 (or the build does).
const Ops* avx2_ops();

// The backend in use. Defaults to the best supported one; the ANITA_KERNELS
// environment variable ("scalar"/"avx2") is honored on first use.
const Ops& active();

// Force a backend by name ("scalar", "avx2", "auto"). Returns false (and
// leaves the selection unchanged) if the name is unknown or unsupported.
bool select(std::string_view name);

// --- convenience wrappers over active() ---

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline double squared_norm(std::span<const double> x) {
  return active().dot(x.data(), x.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), y.size());
}

inline void lincomb(double a, std::span<const double> x, double b,
                    std::span<const double> y, std::span<double> out) {
  active().lincomb(a, x.data(), b, y.data(), out.data(), out.size());
}

inline void lincomb3(double a, std::span<const double> x, double b,
                     std::span<const double> y, double c,
                     std::span<const double> z, std::span<double> out) {
  active().lincomb3(a, x.data(), b, y.data(), c, z.data(), out.data(),
                    out.size());
}

inline void scal(double a, std::span<double> x) {
  active().scal(a, x.data(), x.size());
}

inline double sparse_dot(std::span<const std::uint32_t> idx,
                         std::span<const double> val,
                         std::span<const double> dense) {
  return active().sparse_dot(idx.data(), val.data(), idx.size(), dense.data());
}

inline void sparse_axpy(double a, std::span<const std::uint32_t> idx,
                        std::span<const double> val, std::span<double> dense) {
  active().sparse_axpy(a, idx.data(), val.data(), idx.size(), dense.data());
}

bool all_finite(std::span<const double> x);

}  // namespace anita::kernels
