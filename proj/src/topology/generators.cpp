#include <algorithm>
#include <stdexcept>
#include <string>

#include "bcsim/graph.hpp"
#include "bcsim/rng.hpp"

namespace bcsim {

Graph generate_er(std::size_t n, double mean_degree, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_er: n must be at least 2");
  if (!(mean_degree > 0.0)) throw std::invalid_argument("generate_er: mean degree must be positive");
  const double max_degree = static_cast<double>(n - 1);
  if (mean_degree > max_degree) {
    throw std::invalid_argument("generate_er: mean degree " + std::to_string(mean_degree) +
                                " exceeds complete-graph density n-1 = " + std::to_string(n - 1));
  }
  const double p = mean_degree / max_degree;
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n * (n - 1) / 2)) + 16);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("generate_ba: m must be at least 1");
  if (m >= n) throw std::invalid_argument("generate_ba: m must be smaller than n");
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m * (m - 1) / 2 + m * (n - m));
  // Every edge endpoint appears once here, so a uniform pick is degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());

  for (NodeId u = 0; u < m; ++u) {
    for (NodeId v = u + 1; v < m; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<NodeId> targets;
  for (NodeId fresh = static_cast<NodeId>(m); fresh < n; ++fresh) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId pick = endpoints.empty() ? static_cast<NodeId>(rng.below(fresh))
                                            : endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) targets.push_back(pick);
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, fresh);
      endpoints.push_back(t);
      endpoints.push_back(fresh);
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_complete(std::size_t n) {
  if (n < 2) throw std::invalid_argument("generate_complete: n must be at least 2");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n * (n - 1) / 2);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Graph generate_tree(std::size_t n, std::size_t branching) {
  if (n < 2) throw std::invalid_argument("generate_tree: n must be at least 2");
  if (branching < 1) throw std::invalid_argument("generate_tree: branching must be at least 1");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n - 1);
  for (NodeId child = 1; child < n; ++child) {
    edges.emplace_back(static_cast<NodeId>((child - 1) / branching), child);
  }
  return Graph(n, std::move(edges));
}

}  // namespace bcsim
