#pragma once

// Data-parallel inner loops shared by the dense solver, the Gini estimator and
// the likelihood fits. Every kernel has a scalar reference and, on x86-64, an
// AVX2 variant picked at runtime. Reductions accumulate in four interleaved
// lanes that are combined as (l0 + l1) + (l2 + l3) in both variants, so the two
// paths return identical bits.

#include <cstddef>
#include <span>
#include <string_view>

namespace bcsim::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA supported by the running CPU and compiled into the library.
Isa detected_isa() noexcept;

/// ISA currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Forces an ISA (falls back to Scalar when the request is unsupported).
/// Returns the ISA actually selected. Intended for tests and benchmarks.
Isa set_active_isa(Isa isa) noexcept;

/// y[i] += a * x[i]. Spans must have equal length.
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;

double dot(std::span<const double> x, std::span<const double> y) noexcept;

double sum(std::span<const double> x) noexcept;

/// sum_i (i + 1) * w[i], the rank-weighted sum used by the sorted Gini formula.
double rank_weighted_sum(std::span<const double> w) noexcept;

/// Per-ISA implementations, exposed for equivalence testing.
namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double sum(const double* x, std::size_t n) noexcept;
double rank_weighted_sum(const double* w, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
bool available() noexcept;
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double sum(const double* x, std::size_t n) noexcept;
double rank_weighted_sum(const double* w, std::size_t n) noexcept;
}  // namespace avx2

}  // namespace bcsim::kernels
