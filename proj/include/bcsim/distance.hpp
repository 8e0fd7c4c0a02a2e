#pragma once

#include <cstdint>
#include <vector>

#include "bcsim/dense_lu.hpp"
#include "bcsim/graph.hpp"

namespace bcsim {

/// Average hop distance over ordered reachable pairs.
struct ShortestPathSummary {
  double mean = 0.0;
  /// Reachable ordered pairs divided by n(n-1).
  double coverage = 0.0;
  bool connected() const noexcept { return coverage >= 1.0; }
};

/// Hop distances from `source`; unreachable nodes get -1.
std::vector<std::int64_t> bfs_distances(const Graph& g, NodeId source);

/// Repeated BFS from every node. Throws std::invalid_argument for n < 2 and
/// std::domain_error when no pair is reachable.
ShortestPathSummary mean_shortest_path(const Graph& g);

enum class MfptMethod {
  /// One LU of the fundamental matrix I - P + 1 pi^T; O(n^3).
  Fundamental,
  /// One LU per target column of (I - P_{-j}) m = 1; O(n^4), the defining recurrence.
  PerTarget,
};

/// Mean first-passage times of the simple random walk, M(i, j) for i != j and
/// M(j, j) = 0. Requires a connected graph with no isolated node: throws
/// std::domain_error otherwise (a disconnected graph yields a singular system).
Matrix mfpt_matrix(const Graph& g, MfptMethod method = MfptMethod::Fundamental,
                   int refinement_steps = 1);

/// Mean of the off-diagonal entries of an MFPT matrix.
double mean_off_diagonal(const Matrix& m);

struct DistanceSummary {
  double mean_shortest_path = 0.0;
  double mean_mfpt = 0.0;
  double tau = 1.0;
  /// tau / mean_mfpt.
  double tau_b = 0.0;
  /// tau / mean_shortest_path, the direct-path heuristic.
  double tau_direct = 0.0;
  bool connected = true;
  /// Fraction of ordered pairs (of the whole graph) the averages were taken over.
  double component_coverage = 1.0;
  std::size_t nodes_used = 0;
};

/// Branching threshold tau_b = tau / <M>. Disconnected graphs are reduced to
/// their largest connected component.
DistanceSummary branching_threshold(const Graph& g, double tau,
                                    MfptMethod method = MfptMethod::Fundamental);

}  // namespace bcsim
