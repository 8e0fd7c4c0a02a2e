#pragma once

#include <optional>
#include <span>
#include <vector>

namespace bcsim {

/// Empirical survival function P(X > x).
class Ccdf {
 public:
  /// Throws std::invalid_argument on empty data.
  explicit Ccdf(std::span<const double> data);

  /// Fraction of samples strictly greater than x.
  double operator()(double x) const noexcept;

  /// Distinct sample values, ascending, and the survival fraction at each.
  const std::vector<double>& support() const noexcept { return support_; }
  const std::vector<double>& survival() const noexcept { return survival_; }

 private:
  std::vector<double> sorted_;
  std::vector<double> support_;
  std::vector<double> survival_;
};

/// Continuous power-law MLE, alpha = 1 + n / sum ln(x_i / xmin).
/// Throws std::invalid_argument for fewer than 2 samples, xmin <= 0 or samples
/// below xmin, and std::domain_error when every sample equals xmin.
double fit_power_law(std::span<const double> data, double xmin);

/// Exponential MLE: the sample mean. Throws on empty or non-positive data.
double fit_exponential(std::span<const double> data);

/// Scans candidate lower bounds and returns the one minimizing the
/// Kolmogorov-Smirnov distance between the tail and its power-law fit.
/// At most `max_candidates` quantile-spaced candidates are tried.
double select_xmin_ks(std::span<const double> data, std::size_t min_tail = 10,
                      std::size_t max_candidates = 200);

struct FitReport {
  double alpha = 0.0;    ///< power-law exponent on the tail x >= xmin
  double lambda = 0.0;   ///< mean of the data (exponential fit)
  double R = 0.0;        ///< log-likelihood ratio, power law minus exponential
  std::optional<double> p_value;  ///< null when the per-point ratios have zero spread
  double normalized_R = 0.0;      ///< R / (sigma sqrt(n)); 0 when sigma = 0
  double sigma = 0.0;
  std::size_t n = 0;     ///< samples used (those >= xmin)
  double xmin = 0.0;
  bool low_power = false;  ///< fewer than 10 samples

  /// +1 power law preferred, -1 exponential preferred, 0 not significant.
  int verdict(double significance = 0.05) const noexcept;
};

/// Power-law versus exponential comparison on the samples >= xmin (default:
/// the sample minimum). Both densities share the support [xmin, inf): the
/// exponential is the shifted form with mean (mean(x) - xmin) above xmin. The
/// two-sided p-value comes from R / (sigma sqrt(n)) against a standard normal.
FitReport likelihood_ratio_test(std::span<const double> data, std::optional<double> xmin = std::nullopt);

}  // namespace bcsim
