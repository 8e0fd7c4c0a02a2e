#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string_view>

#include "bcsim/hashpower.hpp"

namespace bcsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::invalid_argument("miner shares line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<double> MinerShareTable::blocks(const std::string& period) const {
  std::vector<double> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (period.empty() || periods[i] == period) out.push_back(rows[i].blocks);
  }
  return out;
}

std::vector<std::string> MinerShareTable::distinct_periods() const {
  std::vector<std::string> out;
  for (const auto& p : periods) {
    if (!p.empty() && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

MinerShareTable read_miner_shares(std::istream& in) {
  MinerShareTable table;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool with_period = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split_csv(line);
    if (!header_seen) {
      if (cells.size() < 2 || cells[0] != "miner_id" || cells[1] != "blocks" ||
          (cells.size() == 3 && cells[2] != "period") || cells.size() > 3) {
        fail(line_no, "expected header 'miner_id,blocks' (optionally ',period')");
      }
      with_period = cells.size() == 3;
      header_seen = true;
      continue;
    }
    if (cells.size() != (with_period ? 3u : 2u)) fail(line_no, "wrong number of columns");
    if (cells[0].empty()) fail(line_no, "empty miner_id");
    double blocks = 0.0;
    auto [ptr, ec] = std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), blocks);
    if (ec != std::errc{} || ptr != cells[1].data() + cells[1].size() || !std::isfinite(blocks) ||
        blocks < 0.0) {
      fail(line_no, "blocks must be a non-negative number");
    }
    table.rows.push_back({std::string(cells[0]), blocks});
    table.periods.emplace_back(with_period ? std::string(cells[2]) : std::string());
  }
  if (!header_seen) throw std::invalid_argument("miner shares: missing header");
  return table;
}

MinerShareTable load_miner_shares(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open miner-share file '" + path + "'");
  return read_miner_shares(in);
}

}  // namespace bcsim
