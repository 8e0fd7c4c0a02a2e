#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcsim/engine.hpp"
#include "bcsim/graph.hpp"
#include "bcsim/hashpower.hpp"
#include "bcsim/metrics.hpp"

namespace bcsim {

enum class TopologyKind { ER, BA, Complete, Tree };
enum class PowerFamily { PowerLaw, Exponential };

struct TopologySpec {
  TopologyKind kind = TopologyKind::BA;
  std::size_t nodes = 100;
  double mean_degree = 8.0;   ///< ER
  std::size_t m = 3;          ///< BA
  std::size_t branching = 2;  ///< tree

  std::string name() const;
  /// The family's own parameter (<k>, m or r); 0 for complete graphs.
  double parameter() const;
};

struct PowerSpec {
  PowerFamily family = PowerFamily::PowerLaw;
  double alpha = 1.5;
  double xmin = 1.0;
  double lambda = 0.05;

  std::string name() const;
  double parameter() const;
};

Graph make_graph(const TopologySpec& spec, std::uint64_t seed);
std::vector<double> make_powers(const PowerSpec& spec, std::size_t n, std::uint64_t seed);

/// Log-spaced grid of `points` values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct SweepSpec {
  TopologySpec topology;
  PowerSpec power;
  double tau = 1.0;
  std::vector<double> tau_nd_grid = log_grid(1e-3, 10.0, 13);
  std::size_t replicates = 1;
  double t_sim = 20000.0;
  std::uint64_t base_seed = 1;

  /// Throws std::invalid_argument when the spec is unusable.
  void validate() const;
};

// Seeds are derived from base_seed and the indices only, so results do not
// depend on scheduling or thread count.
std::uint64_t graph_seed(const SweepSpec& spec, std::size_t replicate);
std::uint64_t power_seed(const SweepSpec& spec, std::size_t replicate);
std::uint64_t run_seed(const SweepSpec& spec, std::size_t replicate, std::size_t grid_index);

/// Declarative sweep document: `key = value` lines, `#` comments.
/// Throws std::invalid_argument("config line N: ...") on malformed input.
SweepSpec parse_sweep_spec(std::istream& in);
SweepSpec load_sweep_spec(const std::string& path);

struct SweepRow {
  std::size_t grid_index = 0;
  double tau_nd = 0.0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::optional<double> tau_b;
  std::optional<MetricsReport> report;
  std::string error;  ///< non-empty when the run failed
};

struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> sd;  ///< sample standard deviation; null below 2 values
  std::size_t count = 0;     ///< non-null values aggregated
};

struct GridSummary {
  double tau_nd = 0.0;
  std::size_t runs = 0;
  std::size_t failed = 0;
  MetricSummary tau_b;
  std::vector<MetricSummary> metrics;  ///< metric_columns() order
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  ///< grid-major, then replicate
  std::vector<GridSummary> summary;

  /// Mean of a metric column at every grid point (null where undefined).
  std::vector<std::optional<double>> mean_of(std::string_view metric) const;
};

/// Runs every (grid point, replicate) pair. One graph and one power profile
/// are drawn per replicate and reused across the grid. Failures are recorded
/// in the row and never abort the sweep.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_summary_csv(std::ostream& out, const SweepResult& result);

MetricSummary summarize(std::span<const std::optional<double>> values);

struct TauCEstimate {
  std::optional<double> tau_c;
  /// P never drops below the threshold on the grid.
  bool unbounded = false;
  /// P is already below the threshold at the first grid point.
  bool below_grid = false;
  std::size_t bracket = 0;  ///< index of the first grid point below the threshold
};

/// First downward crossing of `threshold` by the mean consensus fraction,
/// linearly interpolated in log(tau_nd).
TauCEstimate estimate_tau_c(std::span<const double> tau_nd_grid,
                            std::span<const double> mean_p, double threshold = 0.5);
TauCEstimate estimate_tau_c(const SweepResult& sweep, double threshold = 0.5);

struct ScalingPoint {
  double nodes;
  double tau_c;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  double tau_c_inf = 0.0;
  double c = 0.0;
  double b = 0.0;
  double rss = 0.0;
  bool converged = false;
  std::string message;
};

/// Least-squares fit of tau_c(N) = tau_c_inf + c N^-b with b > 0. For fixed b
/// the model is linear in (tau_c_inf, c); b is found by a log-spaced scan
/// followed by golden-section refinement.
ScalingResult finite_size_extrapolate(std::span<const ScalingPoint> points);

/// Entry point of the `bcsim` command-line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bcsim
