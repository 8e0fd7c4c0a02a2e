#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bcsim/graph.hpp"
#include "bcsim/hashpower.hpp"
#include "bcsim/rng.hpp"

namespace bcsim {

using BlockId = std::uint32_t;

inline constexpr BlockId kGenesis = 0;
inline constexpr BlockId kNoParent = std::numeric_limits<BlockId>::max();
inline constexpr NodeId kNoMiner = std::numeric_limits<NodeId>::max();

struct Block {
  BlockId id = kGenesis;
  BlockId parent = kNoParent;
  std::uint32_t height = 0;
  NodeId miner = kNoMiner;
  double discovery_time = 0.0;

  bool is_genesis() const noexcept { return parent == kNoParent; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// Append-only store of every block ever created. Block ids are dense and
/// equal to creation order; id 0 is the genesis block.
class Blocktree {
 public:
  Blocktree();

  BlockId append(BlockId parent, NodeId miner, double time);

  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& operator[](BlockId id) const noexcept { return blocks_[id]; }
  std::span<const Block> blocks() const noexcept { return blocks_; }

  /// Builds a tree from explicit records (used by tests and trace readers).
  /// Throws std::invalid_argument when the records are not well formed.
  static Blocktree from_blocks(std::vector<Block> blocks);

  friend bool operator==(const Blocktree&, const Blocktree&) = default;

 private:
  std::vector<Block> blocks_;
};

/// Walker alias table for O(1) sampling from a fixed discrete distribution.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  std::size_t sample(Rng& rng) const noexcept;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

struct SimConfig {
  Graph graph;
  HashPowerProfile profile;
  double tau_nd = 1.0;
  double t_sim = 1.0;
  std::uint64_t seed = 0;
  /// Keep the (time, kind, actor, block) log; sweeps switch it off.
  bool record_events = true;
  /// Recompute active edges from scratch after every event and compare.
  bool check_invariants = false;

  /// Throws std::invalid_argument when the configuration is unusable.
  void validate() const;
};

enum class EventKind : std::uint8_t { Creation = 0, Diffusion = 1 };

/// One applied event. For creations `actor` is the miner and `block` the new
/// block; for diffusions `actor` is the receiving node and `block` its new head.
struct Event {
  double time = 0.0;
  EventKind kind = EventKind::Creation;
  NodeId actor = 0;
  BlockId block = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Directed edge i -> j along an undirected graph edge.
struct DirectedEdge {
  NodeId from;
  NodeId to;
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

struct StepOutcome {
  bool applied = false;  ///< false when the next event would fall past the horizon
  EventKind kind = EventKind::Creation;
  double rate = 0.0;     ///< xi used for the waiting time
  double waiting_time = 0.0;
};

/// Mutable state of one run: per-node heads, the active directed edges, the
/// clock and the time spent in global consensus.
class SimState {
 public:
  explicit SimState(const SimConfig& config);

  double clock() const noexcept { return clock_; }
  double consensus_time() const noexcept { return consensus_time_; }
  std::span<const BlockId> heads() const noexcept { return heads_; }
  std::uint32_t height_of(NodeId node) const noexcept { return tree_.blocks()[heads_[node]].height; }
  const Blocktree& blocktree() const noexcept { return tree_; }
  std::span<const Event> events() const noexcept { return events_; }
  std::size_t event_count() const noexcept { return event_count_; }

  std::size_t active_edge_count() const noexcept { return active_.size(); }
  /// Active directed edges as currently maintained, sorted.
  std::vector<DirectedEdge> active_edges() const;
  /// Active directed edges recomputed from the heads, sorted.
  std::vector<DirectedEdge> recompute_active_edges() const;
  bool all_heads_equal() const noexcept;

  /// Total transition rate xi = sum(eta) + E_a / tau_nd.
  double total_rate() const noexcept;

  Blocktree take_blocktree() && { return std::move(tree_); }
  std::vector<Event> take_events() && { return std::move(events_); }

 private:
  friend StepOutcome step(SimState&, const SimConfig&, Rng&, double);

  void set_head(NodeId node, BlockId block);
  void refresh_around(NodeId node);
  void set_slot(std::uint32_t slot, bool active);
  DirectedEdge edge_of_slot(std::uint32_t slot) const noexcept;

  const SimConfig* config_;
  AliasTable creators_;
  double creation_rate_ = 0.0;
  double diffusion_rate_ = 0.0;
  Blocktree tree_;
  std::vector<BlockId> heads_;
  std::vector<std::uint32_t> head_count_;  // nodes holding each block as head
  std::vector<std::uint32_t> active_;      // active directed slots (2e or 2e+1)
  std::vector<std::uint32_t> position_;    // slot -> index in active_, or kInactive
  double clock_ = 0.0;
  double consensus_time_ = 0.0;
  std::vector<Event> events_;
  std::size_t event_count_ = 0;
};

/// One Gillespie event. If the drawn event time exceeds `horizon` the clock is
/// moved to the horizon (accruing consensus time) and nothing else changes.
StepOutcome step(SimState& state, const SimConfig& config, Rng& rng,
                 double horizon = std::numeric_limits<double>::infinity());

struct RunTrace {
  double t_sim = 0.0;
  double consensus_time = 0.0;
  std::vector<BlockId> final_heads;
  std::vector<Event> events;  ///< empty unless record_events
  std::size_t event_count = 0;
  std::size_t creation_count = 0;
  std::size_t diffusion_count = 0;
};

struct RunResult {
  Blocktree tree;
  RunTrace trace;
};

/// All nodes start on the genesis block at t = 0; steps until t_sim.
RunResult run(const SimConfig& config);

/// P = T_c / T_sim.
double consensus_fraction(const RunTrace& trace);

// Run output.

/// JSON document: config echo, seed, block records, head history, T_c.
std::string run_to_json(const SimConfig& config, const RunResult& result);

/// Fixed-width little-endian binary trace: a 16-byte header ("BCSTRACE",
/// u32 version = 1, u32 record size = 21) followed by one record per event:
/// f64 time, u8 kind, u32 actor, u64 block id.
void write_binary_trace(std::ostream& out, std::span<const Event> events);
std::vector<Event> read_binary_trace(std::istream& in);

}  // namespace bcsim
