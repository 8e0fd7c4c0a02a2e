#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "bcsim/engine.hpp"

namespace bcsim {
namespace {

constexpr std::array<char, 8> kMagic = {'B', 'C', 'S', 'T', 'R', 'A', 'C', 'E'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kRecordSize = 8 + 1 + 4 + 8;

static_assert(std::endian::native == std::endian::little,
              "binary trace writer assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.write(bytes, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) throw std::invalid_argument("binary trace: truncated record");
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

std::string run_to_json(const SimConfig& config, const RunResult& result) {
  using nlohmann::json;
  json doc;
  doc["config"] = {
      {"nodes", config.graph.num_nodes()},
      {"edges", config.graph.num_edges()},
      {"tau", config.profile.tau},
      {"tau_nd", config.tau_nd},
      {"t_sim", config.t_sim},
      {"powers", config.profile.powers},
  };
  doc["seed"] = config.seed;

  json blocks = json::array();
  for (const auto& b : result.tree.blocks()) {
    blocks.push_back({
        {"id", b.id},
        {"parent", b.is_genesis() ? json(nullptr) : json(b.parent)},
        {"height", b.height},
        {"miner", b.miner == kNoMiner ? json(nullptr) : json(b.miner)},
        {"time", b.discovery_time},
    });
  }
  doc["blocks"] = std::move(blocks);

  // Each entry is a head change: [time, node, new head].
  json history = json::array();
  for (const auto& e : result.trace.events) history.push_back({e.time, e.actor, e.block});
  doc["head_history"] = std::move(history);
  doc["final_heads"] = result.trace.final_heads;
  doc["consensus_time"] = result.trace.consensus_time;
  doc["consensus_fraction"] = consensus_fraction(result.trace);
  doc["events"] = {
      {"total", result.trace.event_count},
      {"creations", result.trace.creation_count},
      {"diffusions", result.trace.diffusion_count},
  };
  return doc.dump(2);
}

void write_binary_trace(std::ostream& out, std::span<const Event> events) {
  out.write(kMagic.data(), kMagic.size());
  put(out, kVersion);
  put(out, kRecordSize);
  for (const auto& e : events) {
    put(out, e.time);
    put(out, static_cast<std::uint8_t>(e.kind));
    put(out, static_cast<std::uint32_t>(e.actor));
    put(out, static_cast<std::uint64_t>(e.block));
  }
}

std::vector<Event> read_binary_trace(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw std::invalid_argument("binary trace: bad magic");
  }
  if (get<std::uint32_t>(in) != kVersion) throw std::invalid_argument("binary trace: unsupported version");
  if (get<std::uint32_t>(in) != kRecordSize) throw std::invalid_argument("binary trace: unexpected record size");
  std::vector<Event> events;
  while (in.peek() != std::char_traits<char>::eof()) {
    Event e;
    e.time = get<double>(in);
    const auto kind = get<std::uint8_t>(in);
    if (kind > 1) throw std::invalid_argument("binary trace: unknown event kind");
    e.kind = static_cast<EventKind>(kind);
    e.actor = get<std::uint32_t>(in);
    e.block = static_cast<BlockId>(get<std::uint64_t>(in));
    events.push_back(e);
  }
  return events;
}

}  // namespace bcsim
