#include "bcsim/hashpower.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bcsim/kernels.hpp"
#include "bcsim/rng.hpp"

namespace bcsim {

double HashPowerProfile::total_rate() const noexcept { return kernels::sum(rates); }

double power_law_quantile(double u, double alpha, double xmin) {
  if (!(alpha > 1.0)) throw std::invalid_argument("power law: alpha must exceed 1");
  if (!(xmin > 0.0)) throw std::invalid_argument("power law: xmin must be positive");
  return xmin * std::pow(1.0 - u, -1.0 / (alpha - 1.0));
}

double exponential_quantile(double u, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("exponential: lambda must be positive");
  return -lambda * std::log1p(-u);
}

std::vector<double> sample_power_law(std::size_t n, double alpha, double xmin, std::uint64_t seed) {
  power_law_quantile(0.0, alpha, xmin);  // validates parameters
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = power_law_quantile(rng.uniform(), alpha, xmin);
  return out;
}

std::vector<double> sample_exponential(std::size_t n, double lambda, std::uint64_t seed) {
  exponential_quantile(0.5, lambda);
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = exponential_quantile(rng.uniform_open(), lambda);
  return out;
}

HashPowerProfile normalize_rates(std::span<const double> powers, double tau) {
  if (powers.empty()) throw std::invalid_argument("normalize_rates: no powers");
  if (!(tau > 0.0)) throw std::invalid_argument("normalize_rates: tau must be positive");
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] > 0.0) || !std::isfinite(powers[i])) {
      throw std::invalid_argument("normalize_rates: power of node " + std::to_string(i) +
                                  " must be positive and finite");
    }
  }
  HashPowerProfile profile;
  profile.tau = tau;
  profile.powers.assign(powers.begin(), powers.end());
  const double total = kernels::sum(powers);
  profile.rates.resize(powers.size());
  for (std::size_t i = 0; i < powers.size(); ++i) profile.rates[i] = powers[i] / total / tau;
  return profile;
}

std::optional<double> gini(std::span<const double> weights) {
  if (weights.empty()) return std::nullopt;
  std::vector<double> sorted(weights.begin(), weights.end());
  for (double w : sorted) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("gini: weights must be finite and non-negative");
  }
  std::sort(sorted.begin(), sorted.end());
  const double total = kernels::sum(sorted);
  if (!(total > 0.0)) return std::nullopt;
  const auto n = static_cast<double>(sorted.size());
  const double g = 2.0 * kernels::rank_weighted_sum(sorted) / (n * total) - (n + 1.0) / n;
  // Rounding can leave a -1e-16 residue for perfectly equal weights.
  return std::max(0.0, g);
}

std::vector<double> positive_only(std::span<const double> values) {
  std::vector<double> out;
  std::copy_if(values.begin(), values.end(), std::back_inserter(out), [](double v) { return v > 0.0; });
  return out;
}

}  // namespace bcsim
