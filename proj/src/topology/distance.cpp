#include "bcsim/distance.hpp"

#include <queue>
#include <stdexcept>
#include <string>

#include "bcsim/kernels.hpp"

namespace bcsim {
namespace {

void require_walkable(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("mfpt: graph needs at least 2 nodes");
  for (NodeId i = 0; i < n; ++i) {
    if (g.degree(i) == 0) {
      throw std::domain_error("mfpt: node " + std::to_string(i) + " has degree zero");
    }
  }
  if (!g.is_connected()) throw std::domain_error("mfpt: graph is disconnected (singular system)");
}

Matrix mfpt_fundamental(const Graph& g, int refinement_steps) {
  const std::size_t n = g.num_nodes();
  const double two_e = 2.0 * static_cast<double>(g.num_edges());
  std::vector<double> stationary(n);
  for (NodeId i = 0; i < n; ++i) stationary[i] = static_cast<double>(g.degree(i)) / two_e;

  // Z = (I - P + 1 pi^T)^{-1};  M_ij = (Z_jj - Z_ij) / pi_j.
  Matrix a(n, n);
  for (NodeId i = 0; i < n; ++i) {
    auto row = a.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = stationary[j];
    row[i] += 1.0;
    const double step = 1.0 / static_cast<double>(g.degree(i));
    for (const auto& inc : g.neighbors(i)) row[inc.node] -= step;
  }
  DenseLu lu(a);
  Matrix z = Matrix::identity(n);
  lu.solve_in_place(z);
  for (int s = 0; s < refinement_steps; ++s) {
    // R = I - A Z, then Z += A^{-1} R.
    Matrix residual = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto out = residual.row(i);
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k);
        if (aik != 0.0) kernels::axpy(-aik, z.row(k), out);
      }
    }
    lu.solve_in_place(residual);
    for (std::size_t i = 0; i < n; ++i) kernels::axpy(1.0, residual.row(i), z.row(i));
  }

  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = i == j ? 0.0 : (z(j, j) - z(i, j)) / stationary[j];
    }
  }
  return m;
}

Matrix mfpt_per_target(const Graph& g, int refinement_steps) {
  const std::size_t n = g.num_nodes();
  Matrix m(n, n);
  const std::vector<double> ones(n - 1, 1.0);
  for (NodeId target = 0; target < n; ++target) {
    // Unknowns are the nodes other than `target`, compacted.
    auto slot = [target](NodeId v) { return v < target ? v : v - 1; };
    Matrix a = Matrix::identity(n - 1);
    for (NodeId i = 0; i < n; ++i) {
      if (i == target) continue;
      const double step = 1.0 / static_cast<double>(g.degree(i));
      for (const auto& inc : g.neighbors(i)) {
        if (inc.node != target) a(slot(i), slot(inc.node)) -= step;
      }
    }
    const auto column = DenseLu(std::move(a)).solve(ones, refinement_steps);
    for (NodeId i = 0; i < n; ++i) m(i, target) = i == target ? 0.0 : column[slot(i)];
  }
  return m;
}

}  // namespace

std::vector<std::int64_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::int64_t> dist(g.num_nodes(), -1);
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId x = frontier.front();
    frontier.pop();
    for (const auto& inc : g.neighbors(x)) {
      if (dist[inc.node] < 0) {
        dist[inc.node] = dist[x] + 1;
        frontier.push(inc.node);
      }
    }
  }
  return dist;
}

ShortestPathSummary mean_shortest_path(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("mean_shortest_path: graph needs at least 2 nodes");
  double total = 0.0;
  std::size_t pairs = 0;
  for (NodeId s = 0; s < n; ++s) {
    const auto dist = bfs_distances(g, s);
    for (NodeId t = 0; t < n; ++t) {
      if (t != s && dist[t] > 0) {
        total += static_cast<double>(dist[t]);
        ++pairs;
      }
    }
  }
  if (pairs == 0) throw std::domain_error("mean_shortest_path: no reachable pair");
  return {total / static_cast<double>(pairs),
          static_cast<double>(pairs) / static_cast<double>(n * (n - 1))};
}

Matrix mfpt_matrix(const Graph& g, MfptMethod method, int refinement_steps) {
  require_walkable(g);
  return method == MfptMethod::Fundamental ? mfpt_fundamental(g, refinement_steps)
                                           : mfpt_per_target(g, refinement_steps);
}

double mean_off_diagonal(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n < 2) throw std::invalid_argument("mean_off_diagonal: need at least 2 rows");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += kernels::sum(m.row(i)) - m(i, i);
  return total / static_cast<double>(n * (n - 1));
}

DistanceSummary branching_threshold(const Graph& g, double tau, MfptMethod method) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("branching_threshold: graph needs at least 2 nodes");
  if (!(tau > 0.0)) throw std::invalid_argument("branching_threshold: tau must be positive");

  DistanceSummary out;
  out.tau = tau;
  out.connected = g.is_connected();
  const Graph* used = &g;
  Graph component;
  if (!out.connected) {
    const auto members = g.largest_component();
    if (members.size() < 2) throw std::domain_error("branching_threshold: graph has no edges");
    component = g.induced_subgraph(members);
    used = &component;
  }
  const std::size_t c = used->num_nodes();
  out.nodes_used = c;
  out.component_coverage = static_cast<double>(c * (c - 1)) / static_cast<double>(n * (n - 1));
  out.mean_shortest_path = mean_shortest_path(*used).mean;
  out.mean_mfpt = mean_off_diagonal(mfpt_matrix(*used, method));
  out.tau_b = tau / out.mean_mfpt;
  out.tau_direct = tau / out.mean_shortest_path;
  return out;
}

}  // namespace bcsim
