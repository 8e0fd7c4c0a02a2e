#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "bcsim/distance.hpp"
#include "bcsim/harness.hpp"

namespace bcsim {
namespace {

struct ReplicateSetup {
  Graph graph;
  HashPowerProfile profile;
  std::optional<double> tau_b;
  std::string error;
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
}

}  // namespace

MetricSummary summarize(std::span<const std::optional<double>> values) {
  MetricSummary s;
  double total = 0.0;
  for (const auto& v : values) {
    if (v) {
      total += *v;
      ++s.count;
    }
  }
  if (s.count == 0) return s;
  const double mean = total / static_cast<double>(s.count);
  s.mean = mean;
  if (s.count >= 2) {
    double ss = 0.0;
    for (const auto& v : values) {
      if (v) ss += (*v - mean) * (*v - mean);
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

std::vector<std::optional<double>> SweepResult::mean_of(std::string_view metric) const {
  const auto columns = metric_columns();
  const auto it = std::find(columns.begin(), columns.end(), metric);
  if (it == columns.end()) throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
  const auto column = static_cast<std::size_t>(it - columns.begin());
  std::vector<std::optional<double>> out;
  for (const auto& g : summary) out.push_back(g.metrics[column].mean);
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const std::size_t grid = spec.tau_nd_grid.size();

  std::vector<ReplicateSetup> setups(spec.replicates);
  parallel_for(spec.replicates, threads, [&](std::size_t r) {
    auto& setup = setups[r];
    try {
      setup.graph = make_graph(spec.topology, graph_seed(spec, r));
      setup.profile = normalize_rates(make_powers(spec.power, spec.topology.nodes, power_seed(spec, r)), spec.tau);
    } catch (const std::exception& e) {
      setup.error = e.what();
      return;
    }
    if (setup.graph.num_nodes() >= 2 && setup.graph.num_edges() > 0) {
      try {
        setup.tau_b = branching_threshold(setup.graph, spec.tau).tau_b;
      } catch (const std::exception&) {
        // Overlay is optional; the runs themselves are still valid.
      }
    }
  });

  SweepResult result;
  result.spec = spec;
  result.rows.resize(grid * spec.replicates);
  parallel_for(result.rows.size(), threads, [&](std::size_t index) {
    const std::size_t g = index / spec.replicates;
    const std::size_t r = index % spec.replicates;
    SweepRow& row = result.rows[index];
    row.grid_index = g;
    row.replicate = r;
    row.tau_nd = spec.tau_nd_grid[g];
    row.seed = run_seed(spec, r, g);
    const auto& setup = setups[r];
    row.tau_b = setup.tau_b;
    if (!setup.error.empty()) {
      row.error = setup.error;
      return;
    }
    try {
      SimConfig config;
      config.graph = setup.graph;
      config.profile = setup.profile;
      config.tau_nd = row.tau_nd;
      config.t_sim = spec.t_sim;
      config.seed = row.seed;
      config.record_events = false;
      const auto run_result = run(config);
      row.report = compute_metrics(run_result.tree, run_result.trace, setup.profile.powers);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  const std::size_t metric_count = metric_columns().size();
  for (std::size_t g = 0; g < grid; ++g) {
    GridSummary summary;
    summary.tau_nd = spec.tau_nd_grid[g];
    std::vector<std::vector<std::optional<double>>> columns(metric_count);
    std::vector<std::optional<double>> tau_b;
    for (std::size_t r = 0; r < spec.replicates; ++r) {
      const auto& row = result.rows[g * spec.replicates + r];
      ++summary.runs;
      tau_b.push_back(row.tau_b);
      if (!row.report) {
        ++summary.failed;
        continue;
      }
      const auto values = metric_values(*row.report);
      for (std::size_t k = 0; k < metric_count; ++k) columns[k].push_back(values[k]);
    }
    summary.tau_b = summarize(tau_b);
    for (const auto& column : columns) summary.metrics.push_back(summarize(column));
    result.summary.push_back(std::move(summary));
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  const auto& spec = result.spec;
  out << "seed,topology,n,topology_param,power,power_param,tau,tau_nd,replicate,tau_b";
  for (auto column : metric_columns()) out << ',' << column;
  out << ",error\n";
  for (const auto& row : result.rows) {
    out << row.seed << ',' << spec.topology.name() << ',' << spec.topology.nodes << ','
        << format_value(spec.topology.parameter()) << ',' << spec.power.name() << ','
        << format_value(spec.power.parameter()) << ',' << format_value(spec.tau) << ','
        << format_value(row.tau_nd) << ',' << row.replicate << ',' << format_value(row.tau_b);
    if (row.report) {
      for (const auto& v : metric_values(*row.report)) out << ',' << format_value(v);
    } else {
      for (std::size_t k = 0; k < metric_columns().size(); ++k) out << ",NA";
    }
    std::string error = row.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << ',' << error << '\n';
  }
}

void write_summary_csv(std::ostream& out, const SweepResult& result) {
  out << "tau_nd,runs,failed,tau_b_mean";
  for (auto column : metric_columns()) out << ',' << column << "_mean," << column << "_sd";
  out << '\n';
  for (const auto& g : result.summary) {
    out << format_value(g.tau_nd) << ',' << g.runs << ',' << g.failed << ',' << format_value(g.tau_b.mean);
    for (const auto& m : g.metrics) out << ',' << format_value(m.mean) << ',' << format_value(m.sd);
    out << '\n';
  }
}

}  // namespace bcsim
