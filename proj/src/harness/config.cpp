#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string_view>

#include "bcsim/harness.hpp"
#include "bcsim/rng.hpp"

namespace bcsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct LineError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_real(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw LineError("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_count(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw LineError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_real(trim(text.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

std::string TopologySpec::name() const {
  switch (kind) {
    case TopologyKind::ER: return "er";
    case TopologyKind::BA: return "ba";
    case TopologyKind::Complete: return "complete";
    case TopologyKind::Tree: return "tree";
  }
  return "unknown";
}

double TopologySpec::parameter() const {
  switch (kind) {
    case TopologyKind::ER: return mean_degree;
    case TopologyKind::BA: return static_cast<double>(m);
    case TopologyKind::Tree: return static_cast<double>(branching);
    case TopologyKind::Complete: return 0.0;
  }
  return 0.0;
}

std::string PowerSpec::name() const {
  return family == PowerFamily::PowerLaw ? "power_law" : "exponential";
}

double PowerSpec::parameter() const { return family == PowerFamily::PowerLaw ? alpha : lambda; }

Graph make_graph(const TopologySpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case TopologyKind::ER: return generate_er(spec.nodes, spec.mean_degree, seed);
    case TopologyKind::BA: return generate_ba(spec.nodes, spec.m, seed);
    case TopologyKind::Complete: return generate_complete(spec.nodes);
    case TopologyKind::Tree: return generate_tree(spec.nodes, spec.branching);
  }
  throw std::invalid_argument("unknown topology");
}

std::vector<double> make_powers(const PowerSpec& spec, std::size_t n, std::uint64_t seed) {
  return spec.family == PowerFamily::PowerLaw ? sample_power_law(n, spec.alpha, spec.xmin, seed)
                                              : sample_exponential(n, spec.lambda, seed);
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    if (points == 1 && lo > 0.0) return {lo};
    throw std::invalid_argument("log_grid: need 0 < lo < hi and at least 2 points");
  }
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

void SweepSpec::validate() const {
  if (tau_nd_grid.empty()) throw std::invalid_argument("sweep: tau_nd grid is empty");
  for (std::size_t i = 0; i < tau_nd_grid.size(); ++i) {
    if (!(tau_nd_grid[i] > 0.0)) throw std::invalid_argument("sweep: tau_nd values must be positive");
    if (i > 0 && !(tau_nd_grid[i] > tau_nd_grid[i - 1])) {
      throw std::invalid_argument("sweep: tau_nd grid must be strictly increasing");
    }
  }
  if (replicates < 1) throw std::invalid_argument("sweep: replicates must be at least 1");
  if (!(tau > 0.0)) throw std::invalid_argument("sweep: tau must be positive");
  if (!(t_sim > 0.0)) throw std::invalid_argument("sweep: t_sim must be positive");
  if (topology.nodes < 1) throw std::invalid_argument("sweep: nodes must be at least 1");
}

std::uint64_t graph_seed(const SweepSpec& spec, std::size_t replicate) {
  return derive_seed(spec.base_seed, {0, replicate});
}

std::uint64_t power_seed(const SweepSpec& spec, std::size_t replicate) {
  return derive_seed(spec.base_seed, {1, replicate});
}

std::uint64_t run_seed(const SweepSpec& spec, std::size_t replicate, std::size_t grid_index) {
  return derive_seed(spec.base_seed, {2, replicate, grid_index});
}

SweepSpec parse_sweep_spec(std::istream& in) {
  SweepSpec spec;
  std::optional<double> nd_min;
  std::optional<double> nd_max;
  std::optional<std::size_t> nd_points;
  bool explicit_grid = false;

  using Setter = std::function<void(std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"topology",
       [&](std::string_view v) {
         if (v == "er") spec.topology.kind = TopologyKind::ER;
         else if (v == "ba") spec.topology.kind = TopologyKind::BA;
         else if (v == "complete") spec.topology.kind = TopologyKind::Complete;
         else if (v == "tree") spec.topology.kind = TopologyKind::Tree;
         else throw LineError("unknown topology '" + std::string(v) + "' (er, ba, complete, tree)");
       }},
      {"nodes", [&](std::string_view v) { spec.topology.nodes = parse_count(v); }},
      {"mean_degree", [&](std::string_view v) { spec.topology.mean_degree = parse_real(v); }},
      {"m", [&](std::string_view v) { spec.topology.m = parse_count(v); }},
      {"branching", [&](std::string_view v) { spec.topology.branching = parse_count(v); }},
      {"power",
       [&](std::string_view v) {
         if (v == "power_law") spec.power.family = PowerFamily::PowerLaw;
         else if (v == "exponential") spec.power.family = PowerFamily::Exponential;
         else throw LineError("unknown power family '" + std::string(v) + "' (power_law, exponential)");
       }},
      {"alpha", [&](std::string_view v) { spec.power.alpha = parse_real(v); }},
      {"xmin", [&](std::string_view v) { spec.power.xmin = parse_real(v); }},
      {"lambda", [&](std::string_view v) { spec.power.lambda = parse_real(v); }},
      {"tau", [&](std::string_view v) { spec.tau = parse_real(v); }},
      {"tau_nd",
       [&](std::string_view v) {
         spec.tau_nd_grid = parse_list(v);
         explicit_grid = true;
       }},
      {"tau_nd_min", [&](std::string_view v) { nd_min = parse_real(v); }},
      {"tau_nd_max", [&](std::string_view v) { nd_max = parse_real(v); }},
      {"tau_nd_points", [&](std::string_view v) { nd_points = parse_count(v); }},
      {"replicates", [&](std::string_view v) { spec.replicates = parse_count(v); }},
      {"t_sim", [&](std::string_view v) { spec.t_sim = parse_real(v); }},
      {"seed", [&](std::string_view v) { spec.base_seed = parse_count(v); }},
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto fail = [&](const std::string& what) {
      return std::invalid_argument("config line " + std::to_string(line_no) + ": " + what);
    };
    if (eq == std::string_view::npos) throw fail("expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty()) throw fail("missing value for '" + std::string(key) + "'");
    const auto it = setters.find(key);
    if (it == setters.end()) throw fail("unknown key '" + std::string(key) + "'");
    try {
      it->second(value);
    } catch (const LineError& e) {
      throw fail(e.what());
    }
  }

  if (nd_min || nd_max || nd_points) {
    if (explicit_grid) throw std::invalid_argument("config: give either tau_nd or tau_nd_min/max/points");
    spec.tau_nd_grid = log_grid(nd_min.value_or(1e-3 * spec.tau), nd_max.value_or(10.0 * spec.tau),
                                nd_points.value_or(13));
  } else if (!explicit_grid) {
    spec.tau_nd_grid = log_grid(1e-3 * spec.tau, 10.0 * spec.tau, 13);
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  return parse_sweep_spec(in);
}

}  // namespace bcsim
