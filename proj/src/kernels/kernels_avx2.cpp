#include <immintrin.h>

#include "bcsim/kernels.hpp"

namespace bcsim::kernels::avx2 {
namespace {

double combine(__m256d v) noexcept {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

bool available() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}

void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] + prod;
  }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, prod);
  }
  double total = combine(acc);
  for (; i < n; ++i) {
    const double prod = x[i] * y[i];
    total = total + prod;
  }
  return total;
}

double sum(const double* x, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = combine(acc);
  for (; i < n; ++i) total = total + x[i];
  return total;
}

double rank_weighted_sum(const double* w, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  __m256d rank = _mm256_set_pd(4.0, 3.0, 2.0, 1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(rank, _mm256_loadu_pd(w + i)));
    rank = _mm256_add_pd(rank, step);
  }
  double total = combine(acc);
  for (; i < n; ++i) {
    const double prod = static_cast<double>(i + 1) * w[i];
    total = total + prod;
  }
  return total;
}

}  // namespace bcsim::kernels::avx2
