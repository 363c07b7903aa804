#include "anita/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// AVX2 backend. Matches the scalar reference bit for bit: the accumulator
// vector holds the four reduction lanes, the horizontal combine is
// (l0+l2)+(l1+l3), and tails are handled by the same left-to-right loop.
// Compiled with -mavx2 only (no FMA), so mul and add round separately.

namespace anita::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);   // (l0, l1)
  __m128d hi = _mm256_extractf128_pd(v, 1); // (l2, l3)
  __m128d s2 = _mm_add_pd(lo, hi);          // (l0+l2, l1+l3)
  return _mm_cvtsd_f64(s2) + _mm_cvtsd_f64(_mm_unpackhi_pd(s2, s2));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t m = n - n % 4;
  for (std::size_t k = 0; k < m; k += 4) {
    __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k));
    acc = _mm256_add_pd(acc, p);
  }
  double s = hsum(acc);
  for (std::size_t k = m; k < n; ++k) s += x[k] * y[k];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t m = n - n % 4;
  for (std::size_t k = 0; k < m; k += 4) {
    __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + k));
    _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_loadu_pd(y + k), t));
  }
  for (std::size_t k = m; k < n; ++k) y[k] += a * x[k];
}

void lincomb_avx2(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t m = n - n % 4;
  for (std::size_t k = 0; k < m; k += 4) {
    __m256d tx = _mm256_mul_pd(va, _mm256_loadu_pd(x + k));
    __m256d ty = _mm256_mul_pd(vb, _mm256_loadu_pd(y + k));
    _mm256_storeu_pd(out + k, _mm256_add_pd(tx, ty));
  }
  for (std::size_t k = m; k < n; ++k) out[k] = a * x[k] + b * y[k];
}

void lincomb3_avx2(double a, const double* x, double b, const double* y,
                   double c, const double* z, double* out, std::size_t n) {
  __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b),
          vc = _mm256_set1_pd(c);
  std::size_t m = n - n % 4;
  for (std::size_t k = 0; k < m; k += 4) {
    __m256d tx = _mm256_mul_pd(va, _mm256_loadu_pd(x + k));
    __m256d ty = _mm256_mul_pd(vb, _mm256_loadu_pd(y + k));
    __m256d tz = _mm256_mul_pd(vc, _mm256_loadu_pd(z + k));
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_add_pd(tx, ty), tz));
  }
  for (std::size_t k = m; k < n; ++k)
    out[k] = (a * x[k] + b * y[k]) + c * z[k];
}

void scal_avx2(double a, double* x, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t m = n - n % 4;
  for (std::size_t k = 0; k < m; k += 4)
    _mm256_storeu_pd(x + k, _mm256_mul_pd(va, _mm256_loadu_pd(x + k)));
  for (std::size_t k = m; k < n; ++k) x[k] *= a;
}

double sparse_dot_avx2(const std::uint32_t* idx, const double* val,
                       std::size_t nnz, const double* dense) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t m = nnz - nnz % 4;
  for (std::size_t k = 0; k < m; k += 4) {
    __m128i vi =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    __m256d g = _mm256_i32gather_pd(dense, vi, 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(val + k), g));
  }
  double s = hsum(acc);
  for (std::size_t k = m; k < nnz; ++k) s += val[k] * dense[idx[k]];
  return s;
}

// No scatter in AVX2; the scalar loop is already the defined order.
void sparse_axpy_avx2(double a, const std::uint32_t* idx, const double* val,
                      std::size_t nnz, double* dense) {
  for (std::size_t k = 0; k < nnz; ++k) dense[idx[k]] += a * val[k];
}

}  // namespace

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Ops ops = {
      "avx2",        dot_avx2,  axpy_avx2,       lincomb_avx2,
      lincomb3_avx2, scal_avx2, sparse_dot_avx2, sparse_axpy_avx2,
  };
  return &ops;
}

}  // namespace anita::kernels

#endif  // x86_64
