#include "bcsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bcsim/kernels.hpp"

namespace bcsim {
namespace {

constexpr std::uint32_t kInactive = ~std::uint32_t{0};

}  // namespace

Blocktree::Blocktree() { blocks_.push_back(Block{}); }

BlockId Blocktree::append(BlockId parent, NodeId miner, double time) {
  const auto id = static_cast<BlockId>(blocks_.size());
  blocks_.push_back({id, parent, blocks_[parent].height + 1, miner, time});
  return id;
}

Blocktree Blocktree::from_blocks(std::vector<Block> blocks) {
  if (blocks.empty() || !blocks.front().is_genesis() || blocks.front().height != 0) {
    throw std::invalid_argument("blocktree: first record must be a height-0 genesis block");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.id != i) throw std::invalid_argument("blocktree: ids must equal creation order");
    if (i == 0) continue;
    if (b.is_genesis() || b.parent >= i) {
      throw std::invalid_argument("blocktree: block " + std::to_string(i) + " has an invalid parent");
    }
    if (b.height != blocks[b.parent].height + 1) {
      throw std::invalid_argument("blocktree: block " + std::to_string(i) + " has inconsistent height");
    }
    if (b.discovery_time < blocks[i - 1].discovery_time) {
      throw std::invalid_argument("blocktree: discovery times must not decrease with id");
    }
  }
  Blocktree tree;
  tree.blocks_ = std::move(blocks);
  return tree;
}

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("alias table: no weights");
  const double total = kernels::sum(weights);
  if (!(total > 0.0)) throw std::invalid_argument("alias table: weights must have positive sum");
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (auto i : large) prob_[i] = 1.0;
  for (auto i : small) prob_[i] = 1.0;  // leftovers from rounding
}

std::size_t AliasTable::sample(Rng& rng) const noexcept {
  const std::size_t column = rng.below(prob_.size());
  return rng.uniform() < prob_[column] ? column : alias_[column];
}

void SimConfig::validate() const {
  if (graph.num_nodes() == 0) throw std::invalid_argument("config: graph has no nodes");
  if (profile.rates.size() != graph.num_nodes()) {
    throw std::invalid_argument("config: hash-power profile has " + std::to_string(profile.rates.size()) +
                                " entries for " + std::to_string(graph.num_nodes()) + " nodes");
  }
  if (!(tau_nd > 0.0) || !std::isfinite(tau_nd)) throw std::invalid_argument("config: tau_nd must be positive");
  if (!(t_sim > 0.0) || !std::isfinite(t_sim)) throw std::invalid_argument("config: t_sim must be positive");
  for (double r : profile.rates) {
    if (!(r > 0.0)) throw std::invalid_argument("config: creation rates must be positive");
  }
}

SimState::SimState(const SimConfig& config)
    : config_(&config),
      creators_(config.profile.rates),
      creation_rate_(config.profile.total_rate()),
      diffusion_rate_(1.0 / config.tau_nd),
      heads_(config.graph.num_nodes(), kGenesis),
      head_count_{static_cast<std::uint32_t>(config.graph.num_nodes())},
      position_(2 * config.graph.num_edges(), kInactive) {}

double SimState::total_rate() const noexcept {
  return creation_rate_ + static_cast<double>(active_.size()) * diffusion_rate_;
}

bool SimState::all_heads_equal() const noexcept {
  return head_count_[heads_[0]] == heads_.size();
}

DirectedEdge SimState::edge_of_slot(std::uint32_t slot) const noexcept {
  const auto [u, v] = config_->graph.edges()[slot >> 1];
  return (slot & 1u) == 0 ? DirectedEdge{u, v} : DirectedEdge{v, u};
}

void SimState::set_slot(std::uint32_t slot, bool active) {
  const std::uint32_t pos = position_[slot];
  if (active == (pos != kInactive)) return;
  if (active) {
    position_[slot] = static_cast<std::uint32_t>(active_.size());
    active_.push_back(slot);
  } else {
    const std::uint32_t moved = active_.back();
    active_[pos] = moved;
    position_[moved] = pos;
    active_.pop_back();
    position_[slot] = kInactive;
  }
}

void SimState::refresh_around(NodeId node) {
  const auto& blocks = tree_.blocks();
  const std::uint32_t h = blocks[heads_[node]].height;
  const auto& edges = config_->graph.edges();
  for (const auto& inc : config_->graph.neighbors(node)) {
    const std::uint32_t other = blocks[heads_[inc.node]].height;
    // Slot 2e is edges[e].first -> edges[e].second.
    const bool node_is_first = edges[inc.edge].first == node;
    const std::uint32_t outgoing = 2 * inc.edge + (node_is_first ? 0u : 1u);
    const std::uint32_t incoming = outgoing ^ 1u;
    set_slot(outgoing, h > other);
    set_slot(incoming, other > h);
  }
}

void SimState::set_head(NodeId node, BlockId block) {
  --head_count_[heads_[node]];
  ++head_count_[block];
  heads_[node] = block;
  refresh_around(node);
}

std::vector<DirectedEdge> SimState::active_edges() const {
  std::vector<DirectedEdge> out;
  out.reserve(active_.size());
  for (auto slot : active_) out.push_back(edge_of_slot(slot));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DirectedEdge> SimState::recompute_active_edges() const {
  std::vector<DirectedEdge> out;
  for (const auto& [u, v] : config_->graph.edges()) {
    if (height_of(u) > height_of(v)) out.push_back({u, v});
    if (height_of(v) > height_of(u)) out.push_back({v, u});
  }
  std::sort(out.begin(), out.end());
  return out;
}

StepOutcome step(SimState& state, const SimConfig& config, Rng& rng, double horizon) {
  StepOutcome outcome;
  outcome.rate = state.total_rate();
  if (!(outcome.rate > 0.0)) throw std::logic_error("step: total rate is zero");
  outcome.waiting_time = rng.exponential(outcome.rate);

  const bool in_consensus = state.all_heads_equal();
  if (state.clock_ + outcome.waiting_time > horizon) {
    if (in_consensus) state.consensus_time_ += horizon - state.clock_;
    state.clock_ = horizon;
    return outcome;
  }
  if (in_consensus) state.consensus_time_ += outcome.waiting_time;
  state.clock_ += outcome.waiting_time;

  Event event;
  event.time = state.clock_;
  if (rng.uniform() * outcome.rate < state.creation_rate_ || state.active_.empty()) {
    const auto miner = static_cast<NodeId>(state.creators_.sample(rng));
    const BlockId block = state.tree_.append(state.heads_[miner], miner, state.clock_);
    state.head_count_.push_back(0);
    state.set_head(miner, block);
    event = {state.clock_, EventKind::Creation, miner, block};
  } else {
    const std::uint32_t slot = state.active_[rng.below(state.active_.size())];
    const auto [from, to] = state.edge_of_slot(slot);
    // Longest-chain rule: the receiver adopts the sender's whole replica.
    state.set_head(to, state.heads_[from]);
    event = {state.clock_, EventKind::Diffusion, to, state.heads_[from]};
  }
  outcome.applied = true;
  outcome.kind = event.kind;
  ++state.event_count_;
  if (config.record_events) state.events_.push_back(event);

  if (config.check_invariants && state.active_edges() != state.recompute_active_edges()) {
    throw std::logic_error("step: incremental active-edge set diverged at event " +
                           std::to_string(state.event_count_));
  }
  return outcome;
}

RunResult run(const SimConfig& config) {
  config.validate();
  SimState state(config);
  Rng rng(config.seed);
  RunTrace trace;
  trace.t_sim = config.t_sim;
  while (state.clock() < config.t_sim) {
    const auto outcome = step(state, config, rng, config.t_sim);
    if (!outcome.applied) break;
    if (outcome.kind == EventKind::Creation) {
      ++trace.creation_count;
    } else {
      ++trace.diffusion_count;
    }
  }
  trace.consensus_time = state.consensus_time();
  trace.final_heads.assign(state.heads().begin(), state.heads().end());
  trace.event_count = state.event_count();
  RunResult result;
  trace.events = std::move(state).take_events();
  result.tree = std::move(state).take_blocktree();
  result.trace = std::move(trace);
  return result;
}

double consensus_fraction(const RunTrace& trace) {
  if (!(trace.t_sim > 0.0)) throw std::invalid_argument("consensus_fraction: run has no duration");
  return std::clamp(trace.consensus_time / trace.t_sim, 0.0, 1.0);
}

}  // namespace bcsim
