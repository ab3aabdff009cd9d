// AVX2 variants of the inner-loop kernels. Compiled with -mavx2; only
// reachable through the runtime dispatch when the CPU reports AVX2.

#include "symbreak/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

#include <algorithm>

namespace symbreak::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    acc = _mm256_fmadd_pd(xv, yv, acc);
  }
  double tail = 0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return hsum(acc) + tail;
}

double dot3_avx2(const double* w, const double* x, const double* y,
                 std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d wv = _mm256_loadu_pd(w + i);
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(wv, xv), yv, acc);
  }
  double tail = 0;
  for (; i < n; ++i) tail += w[i] * x[i] * y[i];
  return hsum(acc) + tail;
}

void axpby_avx2(double a, const double* x, double b, double* y,
                std::size_t n) {
  __m256d av = _mm256_set1_pd(a);
  __m256d bv = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, xv, _mm256_mul_pd(bv, yv)));
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scale_avx2(double* x, double a, std::size_t n) {
  __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void clamp_min0_avx2(double* x, std::size_t n) {
  __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_max_pd(zero, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] = std::max(x[i], 0.0);
}

double min_value_avx2(const double* x, std::size_t n) {
  if (n < 4) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
    return m;
  }
  __m256d acc = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double m = std::min(std::min(lane[0], lane[1]), std::min(lane[2], lane[3]));
  for (; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{"avx2",       dot_avx2,   dot3_avx2, axpby_avx2,
                       scale_avx2,   clamp_min0_avx2, min_value_avx2};
  return ops;
}

}  // namespace symbreak::kernels

#else  // non-x86: avx2_ops falls back to the scalar table

namespace symbreak::kernels {
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace symbreak::kernels

#endif
