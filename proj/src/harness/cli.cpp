#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcsim/distance.hpp"
#include "bcsim/fitting.hpp"
#include "bcsim/harness.hpp"

namespace bcsim {
namespace {

using nlohmann::json;

json optional_json(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json to_json(const DistanceSummary& s) {
  return {
      {"meanShortestPath", s.mean_shortest_path},
      {"meanMfpt", s.mean_mfpt},
      {"tau", s.tau},
      {"tauB", s.tau_b},
      {"tauDirect", s.tau_direct},
      {"connected", s.connected},
      {"componentCoverage", s.component_coverage},
      {"nodesUsed", s.nodes_used},
  };
}

json to_json(const FitReport& r) {
  return {
      {"alphaHat", r.alpha},
      {"lambdaHat", r.lambda},
      {"R", r.R},
      {"pValue", optional_json(r.p_value)},
      {"normalizedR", r.normalized_R},
      {"n", r.n},
      {"xmin", r.xmin},
      {"lowPower", r.low_power},
      {"verdict", r.verdict() > 0 ? "power_law" : r.verdict() < 0 ? "exponential" : "inconclusive"},
  };
}

/// Writes to --out when given, otherwise to the command's stdout stream.
void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

std::string format_p(std::optional<double> p) {
  if (!p) return "NA";
  if (*p < 0.0005) return "0.0";
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << *p;
  return s.str();
}

std::string fit_table(const std::vector<std::pair<std::string, FitReport>>& reports) {
  std::ostringstream s;
  s << std::left << std::setw(10) << "period" << std::right << std::setw(12) << "R" << std::setw(8) << "p"
    << std::setw(10) << "alpha" << std::setw(12) << "lambda" << std::setw(8) << "n" << '\n';
  for (const auto& [period, r] : reports) {
    const bool significant = r.verdict() != 0;
    s << std::left << std::setw(10) << period << std::right << std::fixed << std::setprecision(2)
      << std::setw(12) << r.R << std::setw(8) << format_p(r.p_value) << std::setw(10) << r.alpha
      << std::setw(12) << std::setprecision(4) << r.lambda << std::setw(8) << r.n
      << (significant ? (r.R > 0 ? "  *power_law" : "  *exponential") : "") << '\n';
  }
  return s.str();
}

SweepSpec spec_from(const std::string& config_path, std::optional<std::uint64_t> seed) {
  SweepSpec spec = config_path.empty() ? SweepSpec{} : load_sweep_spec(config_path);
  if (seed) spec.base_seed = *seed;
  return spec;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blockchain consensus simulator: block creation and gossip on P2P graphs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;

  auto* simulate = app.add_subcommand("simulate", "Run one simulation and print it as JSON");
  std::string trace_path;
  simulate->add_option("--config", config_path, "Sweep-style config; the first tau_nd value is used");
  simulate->add_option("--seed", seed, "Run seed (overrides the config seed)");
  simulate->add_option("--out", out_path, "Output file (default stdout)");
  simulate->add_option("--trace", trace_path, "Also write the binary event trace here");
  simulate->add_option("--threads", threads, "Ignored; a run is sequential");

  auto* sweep = app.add_subcommand("sweep", "Run a tau_nd sweep and write one CSV row per run");
  std::string summary_path;
  sweep->add_option("--config", config_path, "Sweep config file")->required();
  sweep->add_option("--seed", seed, "Base seed (overrides the config)");
  sweep->add_option("--out", out_path, "Per-run CSV (default stdout)");
  sweep->add_option("--summary", summary_path, "Per-grid-point mean/sd CSV");
  sweep->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  std::optional<double> tau_c_threshold;
  sweep->add_option("--tau-c-threshold", tau_c_threshold,
                    "Also report the delay where mean P first drops below this value (stderr, JSON)")
      ->check(CLI::Range(0.0, 1.0));

  auto* mfpt = app.add_subcommand("mfpt", "Shortest-path and random-walk distances of a graph");
  std::string graph_path;
  double tau = 1.0;
  mfpt->add_option("graph", graph_path, "Edge-list file")->required();
  mfpt->add_option("--tau", tau, "Mining interval")->check(CLI::PositiveNumber);
  mfpt->add_option("--out", out_path, "Output file (default stdout)");
  mfpt->add_option("--threads", threads, "Ignored");

  auto* fit = app.add_subcommand("fit", "Power-law versus exponential fit of miner shares");
  std::string shares_path;
  std::optional<double> xmin;
  std::string table_path;
  fit->add_option("shares", shares_path, "CSV with header miner_id,blocks[,period]")->required();
  fit->add_option("--xmin", xmin, "Lower bound (default: sample minimum)");
  fit->add_flag("--ks-xmin", "Choose xmin by Kolmogorov-Smirnov scan");
  fit->add_option("--out", out_path, "JSON output file (default stdout)");
  fit->add_option("--table", table_path, "Text table output when several periods are present (default stderr)");

  auto* gen = app.add_subcommand("gen-graph", "Generate a graph and write it as an edge list");
  gen->add_option("--config", config_path, "Config file with topology keys");
  gen->add_option("--seed", seed, "Graph seed (overrides the config)");
  gen->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*simulate) {
      const SweepSpec spec = spec_from(config_path, std::nullopt);
      SimConfig config;
      config.graph = make_graph(spec.topology, graph_seed(spec, 0));
      config.profile = normalize_rates(make_powers(spec.power, spec.topology.nodes, power_seed(spec, 0)), spec.tau);
      config.tau_nd = spec.tau_nd_grid.front();
      config.t_sim = spec.t_sim;
      config.seed = seed ? *seed : run_seed(spec, 0, 0);
      const auto result = run(config);
      emit(out_path, out, run_to_json(config, result) + "\n");
      if (!trace_path.empty()) {
        std::ofstream trace(trace_path, std::ios::binary);
        if (!trace) throw std::runtime_error("cannot write '" + trace_path + "'");
        write_binary_trace(trace, result.trace.events);
      }
    } else if (*sweep) {
      const SweepSpec spec = spec_from(config_path, seed);
      const auto result = run_sweep(spec, threads);
      std::ostringstream csv;
      write_sweep_csv(csv, result);
      emit(out_path, out, csv.str());
      if (!summary_path.empty()) {
        std::ostringstream summary;
        write_summary_csv(summary, result);
        emit(summary_path, out, summary.str());
      }
      if (tau_c_threshold) {
        const auto est = estimate_tau_c(result, *tau_c_threshold);
        const json doc = {
            {"threshold", *tau_c_threshold},
            {"tauC", optional_json(est.tau_c)},
            {"unbounded", est.unbounded},
            {"belowGrid", est.below_grid},
        };
        err << doc.dump() << '\n';
      }
    } else if (*mfpt) {
      const auto summary = branching_threshold(load_edge_list(graph_path), tau);
      emit(out_path, out, to_json(summary).dump(2) + "\n");
    } else if (*fit) {
      const auto table = load_miner_shares(shares_path);
      const bool ks = fit->count("--ks-xmin") > 0;
      auto fit_one = [&](const std::vector<double>& blocks) {
        const auto data = positive_only(blocks);
        std::optional<double> bound = xmin;
        if (!bound && ks) bound = select_xmin_ks(data);
        return likelihood_ratio_test(data, bound);
      };
      const auto periods = table.distinct_periods();
      if (periods.size() <= 1) {
        emit(out_path, out, to_json(fit_one(table.blocks())).dump(2) + "\n");
      } else {
        std::vector<std::pair<std::string, FitReport>> reports;
        json doc = json::array();
        for (const auto& period : periods) {
          reports.emplace_back(period, fit_one(table.blocks(period)));
          auto entry = to_json(reports.back().second);
          entry["period"] = period;
          doc.push_back(std::move(entry));
        }
        emit(out_path, out, doc.dump(2) + "\n");
        if (table_path.empty()) {
          err << fit_table(reports);
        } else {
          emit(table_path, err, fit_table(reports));
        }
      }
    } else if (*gen) {
      const SweepSpec spec = spec_from(config_path, std::nullopt);
      const auto graph = make_graph(spec.topology, seed ? *seed : graph_seed(spec, 0));
      emit(out_path, out, to_edge_list(graph));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace bcsim
