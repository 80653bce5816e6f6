#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wganfuzz/bytes.hpp"

namespace wganfuzz {

enum class ParseStatus : uint8_t { Ok, Error, Fault };

// Faults are the planted bugs' recoverable in-process signal channel;
// ordinary malformed input yields Error, never Fault.
struct ParseResult {
  ParseStatus status = ParseStatus::Ok;
  int signal = 0;       // SIGSEGV/SIGABRT-style id for Fault
  std::string detail;   // parse error or bug id
};

using EdgeTrace = std::vector<uint32_t>;

struct PlantedBug {
  std::string id;
  std::string trigger;
};

struct TargetSpec {
  std::string name;
  uint32_t total_edges = 0;  // every emitted edge id is < total_edges
  std::function<ParseResult(ByteView, EdgeTrace&)> entry;
  std::function<bool(ByteView)> validity_oracle;  // parses without error
  std::vector<PlantedBug> planted_bugs;
};

// Chunked-container parser, 48 declared edges, two planted bugs.
ParseResult cnk_parse(ByteView input, EdgeTrace& trace);

// Mini ELF-header-like parser, 72 declared edges, one planted bug behind
// three nested checks.
ParseResult melf_parse(ByteView input, EdgeTrace& trace);

const std::vector<TargetSpec>& list_targets();
const TargetSpec* find_target(std::string_view name);

// Bundled valid files used as baseline seeds.
std::vector<ByteBuf> fixture_seeds(std::string_view target);

// Witness inputs for the planted bugs, one per bug.
ByteBuf cnk_witness_len_overflow();   // bug cnk-a
ByteBuf cnk_witness_checksum();       // bug cnk-b
ByteBuf melf_witness_oob();           // bug melf-a

}  // namespace wganfuzz
