#include "bcsim/kernels.hpp"

namespace bcsim::kernels::scalar {

// Lane k accumulates indices congruent to k mod 4, mirroring one 256-bit
// register of doubles. The tail (n mod 4) is folded in sequentially afterwards.

void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] + prod;
  }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double prod = x[i + k] * y[i + k];
      lane[k] = lane[k] + prod;
    }
  }
  double acc = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) {
    const double prod = x[i] * y[i];
    acc = acc + prod;
  }
  return acc;
}

double sum(const double* x, std::size_t n) noexcept {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) lane[k] = lane[k] + x[i + k];
  }
  double acc = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) acc = acc + x[i];
  return acc;
}

double rank_weighted_sum(const double* w, std::size_t n) noexcept {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double prod = static_cast<double>(i + k + 1) * w[i + k];
      lane[k] = lane[k] + prod;
    }
  }
  double acc = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) {
    const double prod = static_cast<double>(i + 1) * w[i];
    acc = acc + prod;
  }
  return acc;
}

}  // namespace bcsim::kernels::scalar
