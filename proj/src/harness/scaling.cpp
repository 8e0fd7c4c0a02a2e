#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bcsim/harness.hpp"

namespace bcsim {
namespace {

constexpr double kMinExponent = 1e-3;
constexpr double kMaxExponent = 5.0;

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rss = std::numeric_limits<double>::infinity();
};

/// Ordinary least squares of tau_c on N^-b.
LinearFit fit_for_exponent(std::span<const ScalingPoint> points, double b) {
  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    sx += std::pow(p.nodes, -b);
    sy += p.tau_c;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = std::pow(p.nodes, -b) - mx;
    sxx += dx * dx;
    sxy += dx * (p.tau_c - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.rss = 0.0;
  for (const auto& p : points) {
    const double r = p.tau_c - (fit.intercept + fit.slope * std::pow(p.nodes, -b));
    fit.rss += r * r;
  }
  return fit;
}

}  // namespace

TauCEstimate estimate_tau_c(std::span<const double> grid, std::span<const double> mean_p, double threshold) {
  if (grid.size() != mean_p.size() || grid.empty()) {
    throw std::invalid_argument("estimate_tau_c: grid and P must be non-empty and equally long");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("estimate_tau_c: threshold must be in (0, 1)");
  TauCEstimate est;
  if (mean_p.front() < threshold) {
    est.below_grid = true;
    return est;
  }
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (mean_p[k] < threshold) {
      const double lo = std::log(grid[k - 1]);
      const double hi = std::log(grid[k]);
      const double frac = (mean_p[k - 1] - threshold) / (mean_p[k - 1] - mean_p[k]);
      est.tau_c = std::exp(lo + frac * (hi - lo));
      est.bracket = k;
      return est;
    }
  }
  est.unbounded = true;
  return est;
}

TauCEstimate estimate_tau_c(const SweepResult& sweep, double threshold) {
  std::vector<double> grid;
  std::vector<double> p;
  const auto means = sweep.mean_of("P");
  for (std::size_t g = 0; g < sweep.summary.size(); ++g) {
    if (!means[g]) continue;
    grid.push_back(sweep.summary[g].tau_nd);
    p.push_back(*means[g]);
  }
  if (grid.empty()) throw std::invalid_argument("estimate_tau_c: sweep has no consensus values");
  return estimate_tau_c(grid, p, threshold);
}

ScalingResult finite_size_extrapolate(std::span<const ScalingPoint> points) {
  ScalingResult result;
  result.points.assign(points.begin(), points.end());
  if (points.size() < 3) {
    result.message = "need at least 3 system sizes";
    return result;
  }
  for (const auto& p : points) {
    if (!(p.nodes > 0.0) || !std::isfinite(p.tau_c) || !(p.tau_c > 0.0)) {
      result.message = "sizes and critical delays must be positive and finite";
      return result;
    }
  }

  // Coarse log-spaced scan for the basin, then golden-section refinement.
  constexpr int kScan = 400;
  const double log_lo = std::log(kMinExponent);
  const double log_hi = std::log(kMaxExponent);
  auto exponent_at = [&](int i) { return std::exp(log_lo + (log_hi - log_lo) * i / kScan); };
  int best = 0;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double rss = fit_for_exponent(points, exponent_at(i)).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best = i;
    }
  }
  double a = std::log(exponent_at(std::max(best - 1, 0)));
  double d = std::log(exponent_at(std::min(best + 1, kScan)));
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  auto rss_at = [&](double log_b) { return fit_for_exponent(points, std::exp(log_b)).rss; };
  double b1 = d - ratio * (d - a);
  double b2 = a + ratio * (d - a);
  double f1 = rss_at(b1);
  double f2 = rss_at(b2);
  for (int iter = 0; iter < 200 && d - a > 1e-12; ++iter) {
    if (f1 < f2) {
      d = b2;
      b2 = b1;
      f2 = f1;
      b1 = d - ratio * (d - a);
      f1 = rss_at(b1);
    } else {
      a = b1;
      b1 = b2;
      f1 = f2;
      b2 = a + ratio * (d - a);
      f2 = rss_at(b2);
    }
  }
  result.b = std::exp(0.5 * (a + d));
  const auto fit = fit_for_exponent(points, result.b);
  result.tau_c_inf = fit.intercept;
  result.c = fit.slope;
  result.rss = fit.rss;

  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, std::abs(p.tau_c));
  const bool flat = std::abs(result.c) <= 1e-9 * std::max(scale, 1.0);
  const bool at_boundary = best == 0 || best == kScan;
  if (at_boundary && !flat) {
    result.message = "exponent ran to the search boundary; data not described by a decaying power law";
  } else if (!std::isfinite(result.tau_c_inf) || !(result.tau_c_inf > 0.0)) {
    result.message = "extrapolated critical delay is not positive";
  } else {
    result.converged = true;
  }
  return result;
}

}  // namespace bcsim
