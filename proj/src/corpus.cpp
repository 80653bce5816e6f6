#include "wganfuzz/corpus.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wganfuzz {

namespace fs = std::filesystem;

std::string Provenance::label() const {
  switch (kind) {
    case ProvenanceKind::Initial:
      return "orig";
    case ProvenanceKind::Mutated:
      return "src:" + parent;
    case ProvenanceKind::Generated:
      return "gen:" + parent;
  }
  return "orig";
}

Provenance Provenance::from_label(std::string_view label) {
  if (label.starts_with("src:")) return mutated(std::string(label.substr(4)));
  if (label.starts_with("gen:")) return generated(std::string(label.substr(4)));
  return initial();
}

QualityVerdict evaluate_quality(const Testcase& tc, const ExecOutcome& out,
                                const GlobalCoverageState& global, const QualityConfig& cfg) {
  (void)tc;
  if (out.coverage.size() != global.map_size())
    throw std::invalid_argument("outcome coverage map size mismatches global state");

  QualityVerdict v;
  v.crash = out.status == ExecStatus::Crash;

  const size_t threshold = global.percentile(cfg.coverage_quantile);
  v.high_coverage = threshold != SIZE_MAX && out.coverage.nonzero_count() >= threshold;

  v.new_path = out.new_edge_count > 0;

  const unsigned hamming =
      static_cast<unsigned>(std::popcount(out.path_hash ^ global.baseline_path_hash));
  v.divergent_path = hamming >= cfg.divergence_bits;

  v.accepted = v.crash || v.high_coverage || v.new_path || v.divergent_path;
  return v;
}

bool Corpus::add(Testcase tc) {
  if (tc.data.empty()) throw std::invalid_argument("testcase data must be non-empty");
  const uint64_t h = content_hash(tc.data);
  if (hashes_.contains(h)) return false;
  if (!ids_.insert(tc.id).second) throw std::invalid_argument("duplicate testcase id: " + tc.id);
  hashes_.insert(h);
  entries_.push_back(std::move(tc));
  return true;
}

bool Corpus::add(Testcase tc, ExecOutcome outcome) {
  std::string id = tc.id;
  if (!add(std::move(tc))) return false;
  outcomes_.emplace(std::move(id), std::move(outcome));
  return true;
}

const ExecOutcome* Corpus::outcome(const std::string& id) const {
  auto it = outcomes_.find(id);
  return it == outcomes_.end() ? nullptr : &it->second;
}

void Corpus::set_outcome(const std::string& id, ExecOutcome outcome) {
  if (!ids_.contains(id)) throw std::invalid_argument("unknown testcase id: " + id);
  outcomes_[id] = std::move(outcome);
}

std::vector<size_t> Corpus::lengths() const {
  std::vector<size_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.data.size());
  return out;
}

namespace {

void write_bytes(const fs::path& file, ByteView data) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
  os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!os) throw std::runtime_error("write failed: " + file.string());
}

ByteBuf read_bytes(const fs::path& file) {
  std::ifstream is(file, std::ios::binary | std::ios::ate);
  if (!is) throw std::runtime_error("cannot open for reading: " + file.string());
  const auto size = is.tellg();
  is.seekg(0);
  ByteBuf buf(static_cast<size_t>(size));
  is.read(reinterpret_cast<char*>(buf.data()), size);
  if (!is) throw std::runtime_error("read failed: " + file.string());
  return buf;
}

std::string entry_filename(size_t index, const Provenance& prov) {
  char idx[16];
  std::snprintf(idx, sizeof(idx), "%06zu", index);
  return "id:" + std::string(idx) + "," + prov.label();
}

}  // namespace

void save_dir(const Corpus& corpus, const fs::path& dir) {
  fs::create_directories(dir / "queue");
  fs::create_directories(dir / "crashes");
  fs::create_directories(dir / "hangs");
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Testcase& tc = corpus[i];
    const std::string name = entry_filename(i, tc.provenance);
    write_bytes(dir / "queue" / name, tc.data);
    if (const ExecOutcome* out = corpus.outcome(tc.id)) {
      if (out->status == ExecStatus::Crash) write_bytes(dir / "crashes" / name, tc.data);
      if (out->status == ExecStatus::Timeout) write_bytes(dir / "hangs" / name, tc.data);
    }
  }
}

Corpus load_dir(const fs::path& dir) {
  const fs::path queue = dir / "queue";
  if (!fs::is_directory(queue))
    throw std::runtime_error("malformed corpus directory (missing queue/): " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(queue))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  Corpus corpus;
  uint64_t counter = 0;
  for (const auto& file : files) {
    const std::string name = file.filename().string();
    Testcase tc;
    const auto comma = name.find(',');
    if (name.starts_with("id:") && comma != std::string::npos) {
      tc.id = name.substr(3, comma - 3);
      tc.provenance = Provenance::from_label(std::string_view(name).substr(comma + 1));
    } else {
      tc.id = name;  // foreign corpus; take the file name as id
    }
    tc.data = read_bytes(file);
    if (tc.data.empty()) throw std::runtime_error("empty testcase file: " + file.string());
    tc.created_at = counter++;
    corpus.add(std::move(tc));
  }
  return corpus;
}

SeedCollector::SeedCollector(size_t map_size, Config cfg) : cfg_(cfg), state_(map_size) {}

void SeedCollector::observe(const Testcase& tc, const ExecOutcome& out,
                            uint64_t parent_path_hash) {
  state_.baseline_path_hash = parent_path_hash;
  const QualityVerdict verdict = evaluate_quality(tc, out, state_, cfg_.quality);
  // History updates happen after evaluation: each outcome is judged against
  // the corpus seen so far.
  state_.record_edge_count(out.coverage.nonzero_count());
  state_.merge(out.coverage);
  ++observed_;
  if (!verdict.accepted) return;
  if (corpus_.size() >= cfg_.max_entries) return;
  Testcase copy = tc;
  if (corpus_.add(std::move(copy), out)) ++accepted_;
}

}  // namespace wganfuzz
