// Built with -mavx2 -mfma; only reached through avx2_table() after a CPU check.
#include <immintrin.h>

#include "tweetpol/kernels.hpp"

namespace tweetpol::kernels::avx2 {

namespace {

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

// Indices are reinterpreted as signed 32-bit by the gather; vocabularies stay below 2^31.
double gather_dot(const double* values, const std::uint32_t* indices, std::size_t nnz,
                  const double* dense) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= nnz; k += 8) {
    __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices + k));
    __m128i i1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices + k + 4));
    __m256d d0 = _mm256_i32gather_pd(dense, i0, 8);
    __m256d d1 = _mm256_i32gather_pd(dense, i1, 8);
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k), d0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k + 4), d1, acc1);
  }
  for (; k + 4 <= nnz; k += 4) {
    __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices + k));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k), _mm256_i32gather_pd(dense, i0, 8), acc0);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; k < nnz; ++k) sum += values[k] * dense[indices[k]];
  return sum;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

void scale(double* x, std::size_t n, double factor) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
  for (; i < n; ++i) x[i] *= factor;
}

}  // namespace tweetpol::kernels::avx2
