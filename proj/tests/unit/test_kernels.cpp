#include <doctest.h>

#include <bit>
#include <cstring>
#include <vector>

#include "bcsim/kernels.hpp"
#include "bcsim/rng.hpp"

using namespace bcsim;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = (rng.uniform() - 0.5) * std::ldexp(1.0, static_cast<int>(rng.below(20)) - 10);
  return v;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

struct IsaGuard {
  kernels::Isa saved = kernels::active_isa();
  ~IsaGuard() { kernels::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("scalar reference matches a long-double evaluation") {
  Rng rng(11);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 1001u}) {
    const auto x = random_vector(n, rng);
    const auto y = random_vector(n, rng);
    long double dot = 0, sum = 0, ranked = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += static_cast<long double>(x[i]) * y[i];
      sum += x[i];
      ranked += static_cast<long double>(i + 1) * x[i];
    }
    CHECK(kernels::scalar::dot(x.data(), y.data(), n) == doctest::Approx(static_cast<double>(dot)).epsilon(1e-12));
    CHECK(kernels::scalar::sum(x.data(), n) == doctest::Approx(static_cast<double>(sum)).epsilon(1e-12));
    CHECK(kernels::scalar::rank_weighted_sum(x.data(), n) ==
          doctest::Approx(static_cast<double>(ranked)).epsilon(1e-12));
  }
}

TEST_CASE("AVX2 kernels reproduce the scalar reference bit for bit") {
  if (!kernels::avx2::available()) {
    MESSAGE("AVX2 not available on this CPU; equivalence check skipped");
    return;
  }
  Rng rng(7);
  for (std::size_t n = 0; n < 70; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_vector(n, rng);
      const auto y = random_vector(n, rng);
      const double a = rng.uniform() * 3.0 - 1.5;
      CHECK(same_bits(kernels::scalar::dot(x.data(), y.data(), n), kernels::avx2::dot(x.data(), y.data(), n)));
      CHECK(same_bits(kernels::scalar::sum(x.data(), n), kernels::avx2::sum(x.data(), n)));
      CHECK(same_bits(kernels::scalar::rank_weighted_sum(x.data(), n),
                      kernels::avx2::rank_weighted_sum(x.data(), n)));
      auto ys = y;
      auto yv = y;
      kernels::scalar::axpy(a, x.data(), ys.data(), n);
      kernels::avx2::axpy(a, x.data(), yv.data(), n);
      CHECK(std::memcmp(ys.data(), yv.data(), n * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("dispatch follows the selected ISA") {
  IsaGuard guard;
  CHECK(kernels::set_active_isa(kernels::Isa::Scalar) == kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  const std::vector<double> w = {1, 2, 3, 4, 5};
  CHECK(kernels::rank_weighted_sum(w) == 55.0);

  const auto picked = kernels::set_active_isa(kernels::Isa::Avx2);
  CHECK(picked == kernels::detected_isa());
  CHECK(kernels::active_isa() == picked);
  CHECK(kernels::rank_weighted_sum(w) == 55.0);
  CHECK(kernels::isa_name(kernels::Isa::Avx2) == "avx2");
}

TEST_CASE("span entry points") {
  std::vector<double> x = {1, 2, 3, 4, 5, 6};
  std::vector<double> y = {1, 1, 1, 1, 1, 1};
  kernels::axpy(2.0, x, y);
  CHECK(y == std::vector<double>{3, 5, 7, 9, 11, 13});
  CHECK(kernels::dot(x, x) == 91.0);
  CHECK(kernels::sum(x) == 21.0);
  CHECK(kernels::sum(std::span<const double>{}) == 0.0);
}
