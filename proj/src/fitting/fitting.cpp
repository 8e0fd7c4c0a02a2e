#include "bcsim/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bcsim/kernels.hpp"

namespace bcsim {

Ccdf::Ccdf(std::span<const double> data) : sorted_(data.begin(), data.end()) {
  if (sorted_.empty()) throw std::invalid_argument("ccdf: empty data");
  std::sort(sorted_.begin(), sorted_.end());
  const auto n = static_cast<double>(sorted_.size());
  for (std::size_t i = 0; i < sorted_.size();) {
    std::size_t j = i;
    while (j < sorted_.size() && sorted_[j] == sorted_[i]) ++j;
    support_.push_back(sorted_[i]);
    survival_.push_back(static_cast<double>(sorted_.size() - j) / n);
    i = j;
  }
}

double Ccdf::operator()(double x) const noexcept {
  const auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

double fit_power_law(std::span<const double> data, double xmin) {
  if (data.size() < 2) throw std::invalid_argument("fit_power_law: need at least 2 samples");
  if (!(xmin > 0.0)) throw std::invalid_argument("fit_power_law: xmin must be positive");
  std::vector<double> logs(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!(data[i] >= xmin)) throw std::invalid_argument("fit_power_law: sample below xmin");
    logs[i] = std::log(data[i] / xmin);
  }
  const double total = kernels::sum(logs);
  if (!(total > 0.0)) throw std::domain_error("fit_power_law: all samples equal xmin, exponent diverges");
  return 1.0 + static_cast<double>(data.size()) / total;
}

double fit_exponential(std::span<const double> data) {
  if (data.empty()) throw std::invalid_argument("fit_exponential: empty data");
  for (double x : data) {
    if (!(x > 0.0)) throw std::invalid_argument("fit_exponential: data must be positive");
  }
  return kernels::sum(data) / static_cast<double>(data.size());
}

double select_xmin_ks(std::span<const double> data, std::size_t min_tail, std::size_t max_candidates) {
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || !(sorted.front() > 0.0)) throw std::invalid_argument("select_xmin_ks: data must be positive");
  min_tail = std::max<std::size_t>(min_tail, 2);
  if (sorted.size() < min_tail) return sorted.front();

  const std::size_t last_start = sorted.size() - min_tail;
  const std::size_t stride = std::max<std::size_t>(1, (last_start + 1) / std::max<std::size_t>(max_candidates, 1));
  double best_xmin = sorted.front();
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t start = 0; start <= last_start; start += stride) {
    if (start > 0 && sorted[start] == sorted[start - 1]) continue;
    const std::span<const double> tail(sorted.data() + start, sorted.size() - start);
    const double xmin = tail.front();
    double alpha = 0.0;
    try {
      alpha = fit_power_law(tail, xmin);
    } catch (const std::domain_error&) {
      continue;
    }
    const auto m = static_cast<double>(tail.size());
    double distance = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
      const double model = 1.0 - std::pow(tail[i] / xmin, 1.0 - alpha);
      const double below = static_cast<double>(i) / m;
      const double upto = static_cast<double>(i + 1) / m;
      distance = std::max({distance, std::abs(model - below), std::abs(upto - model)});
    }
    if (distance < best_distance) {
      best_distance = distance;
      best_xmin = xmin;
    }
  }
  return best_xmin;
}

int FitReport::verdict(double significance) const noexcept {
  if (!p_value || *p_value >= significance || R == 0.0) return 0;
  return R > 0.0 ? 1 : -1;
}

FitReport likelihood_ratio_test(std::span<const double> data, std::optional<double> xmin) {
  if (data.size() < 2) throw std::invalid_argument("likelihood_ratio_test: need at least 2 samples");
  for (double x : data) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("likelihood_ratio_test: data must be positive");
  }
  FitReport report;
  report.xmin = xmin ? *xmin : *std::min_element(data.begin(), data.end());
  std::vector<double> tail;
  std::copy_if(data.begin(), data.end(), std::back_inserter(tail), [&](double x) { return x >= report.xmin; });
  if (tail.size() < 2) throw std::invalid_argument("likelihood_ratio_test: fewer than 2 samples above xmin");

  report.n = tail.size();
  report.low_power = report.n < 10;
  report.alpha = fit_power_law(tail, report.xmin);
  report.lambda = fit_exponential(data);
  const auto n = static_cast<double>(report.n);
  const double excess_mean = fit_exponential(tail) - report.xmin;
  if (!(excess_mean > 0.0)) throw std::domain_error("likelihood_ratio_test: tail has no spread above xmin");

  const double log_pl_norm = std::log(report.alpha - 1.0) - std::log(report.xmin);
  const double log_exp_norm = -std::log(excess_mean);
  std::vector<double> diff(report.n);
  for (std::size_t i = 0; i < report.n; ++i) {
    const double x = tail[i];
    const double log_pl = log_pl_norm - report.alpha * std::log(x / report.xmin);
    const double log_exp = log_exp_norm - (x - report.xmin) / excess_mean;
    diff[i] = log_pl - log_exp;
  }
  report.R = kernels::sum(diff);
  const double mean = report.R / n;
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  report.sigma = std::sqrt(ss / (n - 1.0));
  if (report.sigma > 0.0) {
    report.normalized_R = report.R / (report.sigma * std::sqrt(n));
    report.p_value = std::erfc(std::abs(report.normalized_R) / std::sqrt(2.0));
  }
  return report;
}

}  // namespace bcsim
