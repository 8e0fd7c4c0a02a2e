#include <atomic>
#include <cassert>

#include "bcsim/kernels.hpp"

namespace bcsim::kernels {

#ifndef BCSIM_HAVE_AVX2
namespace avx2 {
bool available() noexcept { return false; }
void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  scalar::axpy(a, x, y, n);
}
double dot(const double* x, const double* y, std::size_t n) noexcept {
  return scalar::dot(x, y, n);
}
double sum(const double* x, std::size_t n) noexcept { return scalar::sum(x, n); }
double rank_weighted_sum(const double* w, std::size_t n) noexcept {
  return scalar::rank_weighted_sum(w, n);
}
}  // namespace avx2
#endif

namespace {

struct Table {
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  double (*sum)(const double*, std::size_t) noexcept;
  double (*rank_weighted_sum)(const double*, std::size_t) noexcept;
};

constexpr Table kScalar{&scalar::axpy, &scalar::dot, &scalar::sum, &scalar::rank_weighted_sum};
constexpr Table kAvx2{&avx2::axpy, &avx2::dot, &avx2::sum, &avx2::rank_weighted_sum};

const Table* table_for(Isa isa) noexcept { return isa == Isa::Avx2 ? &kAvx2 : &kScalar; }

std::atomic<const Table*>& current() noexcept {
  static std::atomic<const Table*> table{table_for(detected_isa())};
  return table;
}

const Table& active() noexcept { return *current().load(std::memory_order_relaxed); }

}  // namespace

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept {
  static const Isa isa = avx2::available() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

Isa active_isa() noexcept { return &active() == &kAvx2 ? Isa::Avx2 : Isa::Scalar; }

Isa set_active_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
  current().store(table_for(isa), std::memory_order_relaxed);
  return isa;
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  assert(x.size() == y.size());
  active().axpy(a, x.data(), y.data(), y.size());
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

double sum(std::span<const double> x) noexcept { return active().sum(x.data(), x.size()); }

double rank_weighted_sum(std::span<const double> w) noexcept {
  return active().rank_weighted_sum(w.data(), w.size());
}

}  // namespace bcsim::kernels
