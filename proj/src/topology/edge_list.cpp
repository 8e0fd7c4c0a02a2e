#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "bcsim/graph.hpp"

namespace bcsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::invalid_argument("edge list line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes=" << g.num_nodes() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

Graph read_edge_list(std::istream& in) {
  std::optional<std::size_t> num_nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      if (body.starts_with("nodes=")) {
        if (num_nodes) fail(line_no, "duplicate nodes header");
        auto value = parse_uint(trim(body.substr(6)));
        if (!value) fail(line_no, "malformed node count");
        num_nodes = static_cast<std::size_t>(*value);
      }
      continue;
    }
    if (!num_nodes) fail(line_no, "edge before '# nodes=N' header");
    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) fail(line_no, "expected 'u v'");
    auto u = parse_uint(trim(line.substr(0, split)));
    auto v = parse_uint(trim(line.substr(split + 1)));
    if (!u || !v) fail(line_no, "expected two non-negative integers");
    if (*u >= *num_nodes || *v >= *num_nodes) fail(line_no, "node id out of range");
    if (*u == *v) fail(line_no, "self-loop");
    edges.emplace_back(static_cast<NodeId>(*u), static_cast<NodeId>(*v));
  }
  if (!num_nodes) throw std::invalid_argument("edge list: missing '# nodes=N' header");
  return Graph(*num_nodes, std::move(edges));
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

}  // namespace bcsim
