#pragma once

#include <cstdint>
#include <vector>

#include "wganfuzz/bytes.hpp"

namespace wganfuzz {

inline constexpr size_t kDefaultMapSize = 65536;

// AFL-style bucketization of raw hit counts into coarse classes so small
// count jitter does not register as new coverage:
//   0, 1, 2, 3, 4-7, 8-15, 16-31, 32-127, 128+  ->  classes 0..8
uint8_t bucket_class(uint8_t raw_count);

// Fixed-size array of 8-bit edge hit counters; counters saturate at 255.
class CoverageMap {
 public:
  explicit CoverageMap(size_t size = kDefaultMapSize);

  void hit(uint32_t edge_id);
  void reset();

  size_t size() const { return counters_.size(); }
  uint8_t operator[](size_t i) const { return counters_[i]; }
  size_t nonzero_count() const;
  const std::vector<uint8_t>& counters() const { return counters_; }

  bool operator==(const CoverageMap&) const = default;

 private:
  std::vector<uint8_t> counters_;
};

// 64-bit hash of the bucketized map; equal bucketized maps hash equal.
uint64_t path_hash(const CoverageMap& map);

// Cumulative coverage across a run plus the statistics the quality criteria
// need: per-slot best bucket class, the distribution of nonzero-edge counts of
// outcomes recorded so far, and a reference path hash for divergence scoring.
class GlobalCoverageState {
 public:
  explicit GlobalCoverageState(size_t map_size = kDefaultMapSize);

  size_t map_size() const { return classes_.size(); }
  const std::vector<uint8_t>& classes() const { return classes_; }

  // Folds a per-execution map in; returns how many slots improved their
  // bucket class (newly lit edges included).
  size_t merge(const CoverageMap& map);

  // merge() without mutating, for lookahead.
  size_t count_improving_slots(const CoverageMap& map) const;

  size_t covered_edges() const { return covered_; }

  // Nonzero-edge-count history used by the high-coverage percentile rule.
  void record_edge_count(size_t nonzero_edges);
  uint64_t outcomes_recorded() const { return recorded_; }

  // Nearest-rank percentile of the recorded counts; q in [0,100]. With no
  // history yet this returns SIZE_MAX so the percentile criterion stays false.
  size_t percentile(double q) const;

  uint64_t baseline_path_hash = 0;

 private:
  std::vector<uint8_t> classes_;
  size_t covered_ = 0;
  std::vector<uint64_t> count_hist_;  // histogram over nonzero-edge counts
  uint64_t recorded_ = 0;
};

}  // namespace wganfuzz
