#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bcsim {

/// Per-node powers and the block-creation rates they induce, with
/// rate_i = (power_i / sum(power)) / tau.
struct HashPowerProfile {
  std::vector<double> powers;
  std::vector<double> rates;
  double tau = 1.0;

  double total_rate() const noexcept;
};

// Inverse-CDF transforms, separated from the samplers so boundary values can be
// checked directly.

/// Pareto with density ~ x^-alpha on [xmin, inf): xmin * (1 - u)^(-1 / (alpha - 1)).
double power_law_quantile(double u, double alpha, double xmin);
/// Exponential with mean lambda: -lambda * ln(1 - u).
double exponential_quantile(double u, double lambda);

/// Throws std::invalid_argument for alpha <= 1 or xmin <= 0.
std::vector<double> sample_power_law(std::size_t n, double alpha, double xmin, std::uint64_t seed);
/// Draws are strictly positive (u is taken from the open interval).
std::vector<double> sample_exponential(std::size_t n, double lambda, std::uint64_t seed);

/// Throws std::invalid_argument on empty input, non-positive powers or tau.
HashPowerProfile normalize_rates(std::span<const double> powers, double tau);

/// Sorted-form Gini index, 2 sum(i w_(i)) / (n sum w) - (n + 1) / n with the
/// weights in ascending order and 1-based ranks. Returns nullopt when every
/// weight is zero. Throws on negative or non-finite weights.
std::optional<double> gini(std::span<const double> weights);

/// One row of a miner-share file: `miner_id,blocks`.
struct MinerShare {
  std::string miner_id;
  double blocks = 0.0;
};

/// Reads the miner-share CSV (header `miner_id,blocks`). A period may be given
/// by an optional third `period` column; rows are returned in file order.
struct MinerShareTable {
  std::vector<MinerShare> rows;
  std::vector<std::string> periods;  ///< per row; empty strings when absent

  /// Block counts of one period (all rows when `period` is empty).
  std::vector<double> blocks(const std::string& period = {}) const;
  /// Distinct periods in first-appearance order.
  std::vector<std::string> distinct_periods() const;
};

MinerShareTable read_miner_shares(std::istream& in);
MinerShareTable load_miner_shares(const std::string& path);

/// Positive entries only, the support of both fitting families.
std::vector<double> positive_only(std::span<const double> values);

}  // namespace bcsim
