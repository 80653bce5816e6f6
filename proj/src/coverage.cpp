#include "wganfuzz/coverage.hpp"

#include <cmath>
#include <stdexcept>

namespace wganfuzz {

uint8_t bucket_class(uint8_t raw) {
  if (raw == 0) return 0;
  if (raw == 1) return 1;
  if (raw == 2) return 2;
  if (raw == 3) return 3;
  if (raw < 8) return 4;
  if (raw < 16) return 5;
  if (raw < 32) return 6;
  if (raw < 128) return 7;
  return 8;
}

CoverageMap::CoverageMap(size_t size) : counters_(size, 0) {
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("coverage map size must be a power of two");
}

void CoverageMap::hit(uint32_t edge_id) {
  uint8_t& c = counters_[edge_id & (counters_.size() - 1)];
  if (c != 0xff) ++c;
}

void CoverageMap::reset() { counters_.assign(counters_.size(), 0); }

size_t CoverageMap::nonzero_count() const {
  size_t n = 0;
  for (uint8_t c : counters_)
    if (c) ++n;
  return n;
}

uint64_t path_hash(const CoverageMap& map) {
  // Hash (index, class) pairs of lit slots in ascending index order.
  uint64_t h = 0xcbf29ce484222325ull;
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i] == 0) continue;
    uint32_t idx = static_cast<uint32_t>(i);
    uint8_t cls = bucket_class(map[i]);
    h = fnv1a64(&idx, sizeof(idx), h);
    h = fnv1a64(&cls, sizeof(cls), h);
  }
  return h;
}

GlobalCoverageState::GlobalCoverageState(size_t map_size)
    : classes_(map_size, 0), count_hist_(map_size + 1, 0) {
  if (map_size == 0 || (map_size & (map_size - 1)) != 0)
    throw std::invalid_argument("coverage map size must be a power of two");
}

size_t GlobalCoverageState::merge(const CoverageMap& map) {
  if (map.size() != classes_.size()) throw std::invalid_argument("coverage map size mismatch");
  size_t improved = 0;
  for (size_t i = 0; i < classes_.size(); ++i) {
    if (map[i] == 0) continue;
    uint8_t cls = bucket_class(map[i]);
    if (cls > classes_[i]) {
      if (classes_[i] == 0) ++covered_;
      classes_[i] = cls;
      ++improved;
    }
  }
  return improved;
}

size_t GlobalCoverageState::count_improving_slots(const CoverageMap& map) const {
  if (map.size() != classes_.size()) throw std::invalid_argument("coverage map size mismatch");
  size_t improved = 0;
  for (size_t i = 0; i < classes_.size(); ++i)
    if (map[i] != 0 && bucket_class(map[i]) > classes_[i]) ++improved;
  return improved;
}

void GlobalCoverageState::record_edge_count(size_t nonzero_edges) {
  if (nonzero_edges >= count_hist_.size()) nonzero_edges = count_hist_.size() - 1;
  ++count_hist_[nonzero_edges];
  ++recorded_;
}

size_t GlobalCoverageState::percentile(double q) const {
  if (recorded_ == 0) return SIZE_MAX;
  if (q < 0) q = 0;
  if (q > 100) q = 100;
  // nearest-rank: smallest value whose cumulative count reaches ceil(q/100 * N)
  uint64_t rank = static_cast<uint64_t>(std::ceil(q / 100.0 * static_cast<double>(recorded_)));
  if (rank == 0) rank = 1;
  uint64_t cum = 0;
  for (size_t v = 0; v < count_hist_.size(); ++v) {
    cum += count_hist_[v];
    if (cum >= rank) return v;
  }
  return count_hist_.size() - 1;
}

}  // namespace wganfuzz
