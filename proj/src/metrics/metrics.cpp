#include "bcsim/metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <stdexcept>

namespace bcsim {

ChainPartition partition_chain(const Blocktree& tree) {
  const auto blocks = tree.blocks();
  BlockId tip = kGenesis;
  for (const auto& b : blocks) {
    const auto& best = blocks[tip];
    if (b.height > best.height || (b.height == best.height && b.discovery_time < best.discovery_time)) {
      tip = b.id;
    }
  }

  ChainPartition p;
  p.on_main.assign(blocks.size(), false);
  for (BlockId at = tip;; at = blocks[at].parent) {
    p.main_chain.push_back(at);
    p.on_main[at] = true;
    if (blocks[at].is_genesis()) break;
  }
  std::reverse(p.main_chain.begin(), p.main_chain.end());
  p.orphans.reserve(blocks.size() - p.main_chain.size());
  for (const auto& b : blocks) {
    if (!p.on_main[b.id]) p.orphans.push_back(b.id);
  }
  return p;
}

double orphan_rate(const ChainPartition& p) {
  return static_cast<double>(p.orphans.size()) / static_cast<double>(p.total());
}

double branch_rate(const Blocktree& tree, const ChainPartition& p) {
  // Every non-genesis main block b has a parent with exactly one main child
  // (b itself), so an orphan c matches some b iff parent(c) is on the main
  // chain and is not the tip.
  const BlockId tip = p.main_chain.back();
  std::size_t pairs = 0;
  for (BlockId c : p.orphans) {
    const BlockId parent = tree[c].parent;
    if (p.on_main[parent] && parent != tip) ++pairs;
  }
  return static_cast<double>(pairs) / static_cast<double>(p.main_chain.size());
}

BranchStats branch_lengths(const Blocktree& tree, const ChainPartition& p) {
  std::vector<bool> has_child(tree.size(), false);
  for (const auto& b : tree.blocks()) {
    if (!b.is_genesis()) has_child[b.parent] = true;
  }
  BranchStats stats;
  std::size_t total = 0;
  for (BlockId leaf : p.orphans) {
    if (has_child[leaf]) continue;
    std::size_t length = 0;
    for (BlockId at = leaf; !p.on_main[at]; at = tree[at].parent) ++length;
    stats.lengths.push_back(length);
    total += length;
  }
  if (!stats.lengths.empty()) stats.mean = static_cast<double>(total) / static_cast<double>(stats.lengths.size());
  return stats;
}

std::optional<double> main_chain_interval(const Blocktree& tree, const ChainPartition& p) {
  if (p.main_chain.size() < 2) return std::nullopt;
  const double span = tree[p.main_chain.back()].discovery_time - tree[p.main_chain.front()].discovery_time;
  return span / static_cast<double>(p.main_chain.size() - 1);
}

MiningConcentration mining_concentration(const Blocktree& tree, const ChainPartition& p,
                                         std::span<const double> powers) {
  const std::size_t n = powers.size();
  std::vector<double> all(n, 0.0);
  std::vector<double> main(n, 0.0);
  std::vector<double> off(n, 0.0);
  for (const auto& b : tree.blocks()) {
    if (b.is_genesis()) continue;
    if (b.miner >= n) throw std::invalid_argument("mining_concentration: miner id out of range");
    all[b.miner] += 1.0;
    (p.on_main[b.id] ? main : off)[b.miner] += 1.0;
  }
  auto share = [n](const std::vector<double>& w) {
    const auto miners = std::count_if(w.begin(), w.end(), [](double x) { return x > 0.0; });
    return static_cast<double>(miners) / static_cast<double>(n);
  };
  MiningConcentration out;
  out.gini_power = gini(powers);
  out.gini_all = gini(all);
  out.gini_main = gini(main);
  out.gini_off = gini(off);
  out.miners_all = share(all);
  out.miners_main = share(main);
  out.miners_off = share(off);
  return out;
}

MetricsReport compute_metrics(const Blocktree& tree, const RunTrace& trace, std::span<const double> powers) {
  const auto partition = partition_chain(tree);
  MetricsReport r;
  r.xi = orphan_rate(partition);
  r.branch_rate = branch_rate(tree, partition);
  r.consensus_prob = consensus_fraction(trace);
  r.mean_branch_length = branch_lengths(tree, partition).mean;
  r.main_chain_interval = main_chain_interval(tree, partition);
  r.mining = mining_concentration(tree, partition, powers);
  r.blocks = tree.size();
  r.main_blocks = partition.main_chain.size();
  return r;
}

std::span<const std::string_view> metric_columns() {
  static constexpr std::array<std::string_view, 11> kColumns = {
      "xi", "F", "P", "L", "T", "G_pi", "G_mc", "G_oc", "n_bt", "n_mc", "n_oc"};
  return kColumns;
}

std::vector<std::optional<double>> metric_values(const MetricsReport& r) {
  return {r.xi,
          r.branch_rate,
          r.consensus_prob,
          r.mean_branch_length,
          r.main_chain_interval,
          r.mining.gini_power,
          r.mining.gini_main,
          r.mining.gini_off,
          r.mining.miners_all,
          r.mining.miners_main,
          r.mining.miners_off};
}

std::string format_value(std::optional<double> value) {
  if (!value) return "NA";
  char buf[64];
  // Shortest round-trip representation keeps CSVs byte-stable.
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *value);
  if (ec != std::errc{}) throw std::runtime_error("format_value: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace bcsim
