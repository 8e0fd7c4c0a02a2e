#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bcsim {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Neighbor entry in the adjacency of a node: the neighbor and the undirected
/// edge connecting them.
struct Incidence {
  NodeId node;
  EdgeId edge;

  friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// Undirected simple graph stored as an edge list plus CSR adjacency.
///
/// Edges are normalized to (min, max) and kept in insertion order; the
/// adjacency of every node is sorted by neighbor id. Construction rejects
/// self-loops, duplicates and out-of-range endpoints, so every Graph value
/// satisfies the simple-graph invariants.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t num_nodes, std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const std::pair<NodeId, NodeId>> edges() const noexcept { return edges_; }
  std::span<const Incidence> neighbors(NodeId node) const noexcept {
    return {adjacency_.data() + offsets_[node], adjacency_.data() + offsets_[node + 1]};
  }
  std::size_t degree(NodeId node) const noexcept { return offsets_[node + 1] - offsets_[node]; }
  double mean_degree() const noexcept;
  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Copy of this graph with one extra edge.
  Graph with_edge(NodeId u, NodeId v) const;

  /// Component label per node; labels are dense, ordered by smallest member.
  std::vector<std::uint32_t> component_labels() const;
  bool is_connected() const;
  /// Members of the largest connected component (ties: lowest label), ascending.
  std::vector<NodeId> largest_component() const;
  /// Subgraph induced by `nodes`, relabelled 0..nodes.size()-1 in the given order.
  Graph induced_subgraph(std::span<const NodeId> nodes) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> adjacency_;
};

// Generators. All randomized generators are deterministic in the seed.

/// G(n, p) with p = mean_degree / (n - 1).
Graph generate_er(std::size_t n, double mean_degree, std::uint64_t seed);

/// Preferential attachment grown from an m-clique; each new node attaches m edges.
Graph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed);

Graph generate_complete(std::size_t n);

/// Complete r-ary tree filled level by level: parent(i) = (i - 1) / r.
Graph generate_tree(std::size_t n, std::size_t branching);

// Edge-list exchange format: a `# nodes=N` header followed by one `u v` pair
// per line, 0-indexed. Blank lines and further `#` comments are ignored.

void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);
/// Throws std::invalid_argument with a line number on malformed input.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

}  // namespace bcsim
