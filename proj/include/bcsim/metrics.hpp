#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcsim/engine.hpp"
#include "bcsim/hashpower.hpp"

namespace bcsim {

/// Main chain versus orphaned blocks of a finished blocktree.
struct ChainPartition {
  /// Genesis-rooted path, genesis first.
  std::vector<BlockId> main_chain;
  /// Every other block, ascending id.
  std::vector<BlockId> orphans;
  /// on_main[id] for every block in the tree.
  std::vector<bool> on_main;

  std::size_t total() const noexcept { return on_main.size(); }
};

/// The main chain ends at the highest block; equal heights go to the earliest
/// discovery (then the lowest id).
ChainPartition partition_chain(const Blocktree& tree);

/// Orphaned block rate |O| / |B|.
double orphan_rate(const ChainPartition& p);

/// Number of (main, orphan) pairs sharing a parent, divided by |M|.
double branch_rate(const Blocktree& tree, const ChainPartition& p);

struct BranchStats {
  /// Mean over orphan leaves; 0 when there are no orphans.
  double mean = 0.0;
  /// One entry per orphan leaf: orphan blocks between it and the main chain.
  std::vector<std::size_t> lengths;
};

BranchStats branch_lengths(const Blocktree& tree, const ChainPartition& p);

/// Mean spacing of discovery times along the main chain,
/// (t(tip) - t(genesis)) / (|M| - 1). nullopt when |M| < 2.
std::optional<double> main_chain_interval(const Blocktree& tree, const ChainPartition& p);

struct MiningConcentration {
  std::optional<double> gini_power;
  std::optional<double> gini_all;   ///< over w^bt
  std::optional<double> gini_main;  ///< over w^mc
  std::optional<double> gini_off;   ///< over w^oc
  double miners_all = 0.0;          ///< n_bt: share of nodes with any block
  double miners_main = 0.0;         ///< n_mc
  double miners_off = 0.0;          ///< n_oc
};

/// Per-miner block counts over all/main/off-chain blocks (genesis excluded),
/// their Gini indices and the fraction of nodes with a nonzero count. An empty
/// class reports a null Gini and a zero fraction.
MiningConcentration mining_concentration(const Blocktree& tree, const ChainPartition& p,
                                         std::span<const double> powers);

struct MetricsReport {
  double xi = 0.0;
  double branch_rate = 0.0;
  double consensus_prob = 0.0;
  double mean_branch_length = 0.0;
  std::optional<double> main_chain_interval;
  MiningConcentration mining;
  std::size_t blocks = 0;
  std::size_t main_blocks = 0;
};

MetricsReport compute_metrics(const Blocktree& tree, const RunTrace& trace,
                              std::span<const double> powers);

/// Metric column names, in output order.
std::span<const std::string_view> metric_columns();
/// Values of one report in metric_columns() order; nullopt for undefined metrics.
std::vector<std::optional<double>> metric_values(const MetricsReport& report);

/// CSV cell for a possibly undefined value: "NA" when null.
std::string format_value(std::optional<double> value);

}  // namespace bcsim
