#include "bcsim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bcsim {

Graph::Graph(std::size_t num_nodes, std::vector<std::pair<NodeId, NodeId>> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  std::vector<std::size_t> degree(num_nodes_, 0);
  for (auto& [u, v] : edges_) {
    if (u >= num_nodes_ || v >= num_nodes_) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") out of range for " + std::to_string(num_nodes_) + " nodes");
    }
    if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
    ++degree[u];
    ++degree[v];
  }

  offsets_.assign(num_nodes_ + 1, 0);
  for (std::size_t i = 0; i < num_nodes_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    adjacency_[fill[u]++] = {v, e};
    adjacency_[fill[v]++] = {u, e};
  }
  for (std::size_t i = 0; i < num_nodes_; ++i) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last, [](const Incidence& a, const Incidence& b) { return a.node < b.node; });
    auto dup = std::adjacent_find(first, last, [](const Incidence& a, const Incidence& b) {
      return a.node == b.node;
    });
    if (dup != last) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(i) + ", " +
                                  std::to_string(dup->node) + ")");
    }
  }
}

double Graph::mean_degree() const noexcept {
  return num_nodes_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(num_nodes_);
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= num_nodes_ || v >= num_nodes_) return false;
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), Incidence{v, 0},
                            [](const Incidence& a, const Incidence& b) { return a.node < b.node; });
}

Graph Graph::with_edge(NodeId u, NodeId v) const {
  auto edges = edges_;
  edges.emplace_back(u, v);
  return Graph(num_nodes_, std::move(edges));
}

std::vector<std::uint32_t> Graph::component_labels() const {
  constexpr auto kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> label(num_nodes_, kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId root = 0; root < num_nodes_; ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (const auto& inc : neighbors(x)) {
        if (label[inc.node] == kUnset) {
          label[inc.node] = next;
          stack.push_back(inc.node);
        }
      }
    }
    ++next;
  }
  return label;
}

bool Graph::is_connected() const {
  if (num_nodes_ <= 1) return true;
  auto labels = component_labels();
  return std::all_of(labels.begin(), labels.end(), [](std::uint32_t l) { return l == 0; });
}

std::vector<NodeId> Graph::largest_component() const {
  auto labels = component_labels();
  if (labels.empty()) return {};
  const auto count = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> size(count, 0);
  for (auto l : labels) ++size[l];
  const auto best = static_cast<std::uint32_t>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<NodeId> members;
  members.reserve(size[best]);
  for (NodeId i = 0; i < num_nodes_; ++i) {
    if (labels[i] == best) members.push_back(i);
  }
  return members;
}

Graph Graph::induced_subgraph(std::span<const NodeId> nodes) const {
  constexpr auto kAbsent = ~NodeId{0};
  std::vector<NodeId> relabel(num_nodes_, kAbsent);
  for (NodeId k = 0; k < nodes.size(); ++k) relabel[nodes[k]] = k;
  std::vector<std::pair<NodeId, NodeId>> sub;
  for (const auto& [u, v] : edges_) {
    if (relabel[u] != kAbsent && relabel[v] != kAbsent) sub.emplace_back(relabel[u], relabel[v]);
  }
  return Graph(nodes.size(), std::move(sub));
}

}  // namespace bcsim
