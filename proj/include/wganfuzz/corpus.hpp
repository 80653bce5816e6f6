#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wganfuzz/bytes.hpp"
#include "wganfuzz/coverage.hpp"

namespace wganfuzz {

enum class ProvenanceKind : uint8_t { Initial, Mutated, Generated };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Initial;
  std::string parent;  // parent testcase id (Mutated) or checkpoint id (Generated)

  static Provenance initial() { return {ProvenanceKind::Initial, {}}; }
  static Provenance mutated(std::string parent_id) {
    return {ProvenanceKind::Mutated, std::move(parent_id)};
  }
  static Provenance generated(std::string checkpoint_id) {
    return {ProvenanceKind::Generated, std::move(checkpoint_id)};
  }

  std::string label() const;  // "orig" | "src:<id>" | "gen:<id>"
  static Provenance from_label(std::string_view label);

  bool operator==(const Provenance&) const = default;
};

struct Testcase {
  std::string id;
  ByteBuf data;  // length >= 1
  Provenance provenance;
  uint64_t created_at = 0;  // monotonic counter, assigned by the producer
};

enum class ExecStatus : uint8_t { Ok, Crash, Timeout };

struct ExecOutcome {
  ExecStatus status = ExecStatus::Ok;
  int signal = 0;  // set for Crash
  CoverageMap coverage{kDefaultMapSize};
  size_t new_edge_count = 0;  // slots whose bucket class beat the global state when executed
  uint64_t path_hash = 0;     // hash of the bucketized coverage map
};

// The four high-quality criteria; accepted is their disjunction.
struct QualityVerdict {
  bool crash = false;
  bool high_coverage = false;
  bool new_path = false;
  bool divergent_path = false;
  bool accepted = false;
};

struct QualityConfig {
  double coverage_quantile = 90.0;  // percentile rank of nonzero-edge counts
  unsigned divergence_bits = 16;    // Hamming bits between 64-bit path hashes
};

// Pure given its inputs. `global` supplies the cumulative percentile history
// and the reference (parent/baseline) path hash for divergence scoring.
// Throws std::invalid_argument when out.coverage size mismatches the global map.
QualityVerdict evaluate_quality(const Testcase& tc, const ExecOutcome& out,
                                const GlobalCoverageState& global, const QualityConfig& cfg);

// Ordered testcase collection, deduplicated by content hash. Concurrent
// readers are safe; writers need exclusive access.
class Corpus {
 public:
  // Returns false (and leaves the corpus unchanged) when the same bytes are
  // already present. Throws on empty data or duplicate id.
  bool add(Testcase tc);
  bool add(Testcase tc, ExecOutcome outcome);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Testcase>& entries() const { return entries_; }
  const Testcase& operator[](size_t i) const { return entries_[i]; }

  const ExecOutcome* outcome(const std::string& id) const;
  void set_outcome(const std::string& id, ExecOutcome outcome);

  std::vector<size_t> lengths() const;

 private:
  std::vector<Testcase> entries_;
  std::unordered_set<uint64_t> hashes_;
  std::unordered_set<std::string> ids_;
  std::unordered_map<std::string, ExecOutcome> outcomes_;
};

// AFL-compatible directory layout: raw bytes in queue/, crashing entries
// duplicated under crashes/, timeouts under hangs/. Files are named
// id:NNNNNN,<provenance>.
void save_dir(const Corpus& corpus, const std::filesystem::path& dir);
Corpus load_dir(const std::filesystem::path& dir);

// Applies the quality criteria to every execution observed during a bootstrap
// fuzzing run and keeps the accepted testcases (deduplicated, capped).
class SeedCollector {
 public:
  struct Config {
    QualityConfig quality;
    size_t max_entries = 4096;
  };

  explicit SeedCollector(size_t map_size, Config cfg = {});

  // parent_path_hash: path hash of the seed this testcase was mutated from;
  // for initial seeds pass the outcome's own hash.
  void observe(const Testcase& tc, const ExecOutcome& out, uint64_t parent_path_hash);

  const Corpus& collected() const { return corpus_; }
  Corpus take() { return std::move(corpus_); }
  uint64_t observed() const { return observed_; }
  uint64_t accepted() const { return accepted_; }

 private:
  Config cfg_;
  GlobalCoverageState state_;
  Corpus corpus_;
  uint64_t observed_ = 0;
  uint64_t accepted_ = 0;
};

}  // namespace wganfuzz
