#include "wganfuzz/targets.hpp"

namespace wganfuzz {

// CNK container: "CNK1" magic, u16le chunk count, u32le checksum, then
// `count` chunks of (u8 tag, u16le len, payload[len]). Byte layout and the
// planted bug triggers are documented in docs/targets.md.
namespace cnk {

constexpr uint32_t kEdges = 48;

enum : uint32_t {
  E_ENTRY = 0,
  E_TOO_SHORT = 1,
  E_MAGIC_OK = 2,
  E_MAGIC_BAD = 3,
  E_HDR_SHORT = 4,
  E_HDR_OK = 5,
  E_CHECKSUM_BUG = 6,
  E_CHECKSUM_OK = 7,
  E_COUNT_ZERO = 8,
  E_COUNT_POS = 9,
  E_COUNT_HUGE = 10,
  E_CHUNK_ITER = 11,
  E_CHUNK_HDR_SHORT = 12,
  E_CHUNK_HDR_OK = 13,
  E_LEN_OVERRUN = 14,
  E_META_OVERRUN_BUG = 15,
  E_META_OVERRUN_ERR = 16,
  E_OTHER_OVERRUN = 17,
  E_LEN_FITS = 18,
  E_TAG_TEXT = 19,
  E_TEXT_EMPTY = 20,
  E_TEXT_SCAN = 21,
  E_TEXT_BAD_CHAR = 22,
  E_TEXT_OK = 23,
  E_TAG_U32S = 24,
  E_U32S_MISALIGNED = 25,
  E_U32S_OK = 26,
  E_U32S_BIG_VALUE = 27,
  E_TAG_BLOB = 28,
  E_BLOB_EMPTY = 29,
  E_BLOB_KEY_OK = 30,
  E_BLOB_KEY_BAD = 31,
  E_TAG_META = 32,
  E_META_SIGNED = 33,
  E_META_PLAIN = 34,
  E_TAG_UNKNOWN = 35,
  E_TRAILING = 36,
  E_PARSE_OK = 37,
  E_COUNT_DEEP = 38,
  E_CHECKSUM_ZERO = 39,
  E_CHECKSUM_NONZERO = 40,
  E_TEXT_LONG = 41,
  E_U32S_MARKER = 42,
  E_BLOB_LARGE = 43,
  E_META_LARGE = 44,
  E_CHUNK_DEEP = 45,
  E_PAYLOAD_HEAVY = 46,
  E_FILE_LARGE = 47,
};

}  // namespace cnk

ParseResult cnk_parse(ByteView in, EdgeTrace& trace) {
  using namespace cnk;
  auto edge = [&trace](uint32_t id) { trace.push_back(id); };
  auto fail = [](std::string msg) { return ParseResult{ParseStatus::Error, 0, std::move(msg)}; };

  edge(E_ENTRY);
  if (in.size() < 4) {
    edge(E_TOO_SHORT);
    return fail("too short");
  }
  if (!(in[0] == 'C' && in[1] == 'N' && in[2] == 'K' && in[3] == '1')) {
    edge(E_MAGIC_BAD);
    return fail("bad magic");
  }
  edge(E_MAGIC_OK);

  if (in.size() < 10) {
    edge(E_HDR_SHORT);
    return fail("truncated header");
  }
  edge(E_HDR_OK);
  if (in.size() > 128) edge(E_FILE_LARGE);

  const uint16_t count = read_u16le(in, 4);
  const uint32_t checksum = read_u32le(in, 6);

  if (checksum == 0xDEADBEEFu) {
    edge(E_CHECKSUM_BUG);
    return {ParseStatus::Fault, 6 /*SIGABRT*/, "cnk-b"};
  }
  edge(E_CHECKSUM_OK);
  edge(checksum == 0 ? E_CHECKSUM_ZERO : E_CHECKSUM_NONZERO);

  if (count == 0) {
    edge(E_COUNT_ZERO);
  } else {
    edge(E_COUNT_POS);
    if (count > 8) {
      edge(E_COUNT_HUGE);
      return fail("too many chunks");
    }
    if (count > 3) edge(E_COUNT_DEEP);
  }

  size_t pos = 10;
  size_t payload_total = 0;
  for (uint16_t i = 0; i < count; ++i) {
    edge(E_CHUNK_ITER);
    if (i >= 4) edge(E_CHUNK_DEEP);
    if (in.size() - pos < 3) {
      edge(E_CHUNK_HDR_SHORT);
      return fail("truncated chunk header");
    }
    edge(E_CHUNK_HDR_OK);
    const uint8_t tag = in[pos];
    const uint16_t len = read_u16le(in, pos + 1);
    pos += 3;

    if (len > in.size() - pos) {
      edge(E_LEN_OVERRUN);
      if (tag == 0x7F) {
        if (count > 3) {
          edge(E_META_OVERRUN_BUG);
          return {ParseStatus::Fault, 11 /*SIGSEGV*/, "cnk-a"};
        }
        edge(E_META_OVERRUN_ERR);
        return fail("meta chunk overruns input");
      }
      edge(E_OTHER_OVERRUN);
      return fail("chunk overruns input");
    }
    edge(E_LEN_FITS);
    const ByteView payload = in.subspan(pos, len);
    pos += len;
    payload_total += len;

    switch (tag) {
      case 0x01: {  // TEXT: printable ASCII
        edge(E_TAG_TEXT);
        if (payload.empty()) {
          edge(E_TEXT_EMPTY);
          return fail("empty text chunk");
        }
        edge(E_TEXT_SCAN);
        for (uint8_t b : payload) {
          if (b < 0x20 || b > 0x7e) {
            edge(E_TEXT_BAD_CHAR);
            return fail("text chunk not printable");
          }
        }
        edge(E_TEXT_OK);
        if (payload.size() >= 16) edge(E_TEXT_LONG);
        break;
      }
      case 0x02: {  // U32S: little-endian u32 array
        edge(E_TAG_U32S);
        if (len % 4 != 0) {
          edge(E_U32S_MISALIGNED);
          return fail("u32 chunk misaligned");
        }
        edge(E_U32S_OK);
        for (size_t off = 0; off + 4 <= payload.size(); off += 4) {
          const uint32_t v = read_u32le(payload, off);
          if (v > 0x7FFFFFFFu) edge(E_U32S_BIG_VALUE);
          if (v == 0x11111111u) edge(E_U32S_MARKER);
        }
        break;
      }
      case 0x03: {  // BLOB: first byte keys the length
        edge(E_TAG_BLOB);
        if (payload.empty()) {
          edge(E_BLOB_EMPTY);
          break;
        }
        if (payload[0] != static_cast<uint8_t>(len & 0xff)) {
          edge(E_BLOB_KEY_BAD);
          return fail("blob key mismatch");
        }
        edge(E_BLOB_KEY_OK);
        if (payload.size() >= 8) edge(E_BLOB_LARGE);
        break;
      }
      case 0x7F: {  // META: free-form
        edge(E_TAG_META);
        if (payload.size() >= 4 && payload[0] == 'M' && payload[1] == 'E' && payload[2] == 'T' &&
            payload[3] == 'A')
          edge(E_META_SIGNED);
        else
          edge(E_META_PLAIN);
        if (payload.size() >= 8) edge(E_META_LARGE);
        break;
      }
      default:
        edge(E_TAG_UNKNOWN);
        return fail("unknown chunk tag");
    }
  }

  if (payload_total > 64) edge(E_PAYLOAD_HEAVY);
  if (pos != in.size()) {
    edge(E_TRAILING);
    return fail("trailing bytes after last chunk");
  }
  edge(E_PARSE_OK);
  return {};
}

namespace {

ByteBuf cnk_header(uint16_t count, uint32_t checksum) {
  ByteBuf b = {'C', 'N', 'K', '1'};
  put_u16le(b, count);
  put_u32le(b, checksum);
  return b;
}

void cnk_chunk(ByteBuf& b, uint8_t tag, ByteView payload) {
  b.push_back(tag);
  put_u16le(b, static_cast<uint16_t>(payload.size()));
  b.insert(b.end(), payload.begin(), payload.end());
}

}  // namespace

ByteBuf cnk_witness_len_overflow() {
  // count > 3 and a final 0x7F chunk whose len runs past the input
  ByteBuf b = cnk_header(4, 0);
  const ByteBuf text = {'o', 'k'};
  cnk_chunk(b, 0x01, text);
  const ByteBuf blob = {4, 0xaa, 0xbb, 0xcc};
  cnk_chunk(b, 0x03, blob);
  const ByteBuf words = {0x01, 0x00, 0x00, 0x00};
  cnk_chunk(b, 0x02, words);
  b.push_back(0x7F);
  put_u16le(b, 0xFFFF);  // no payload follows
  return b;
}

ByteBuf cnk_witness_checksum() { return cnk_header(0, 0xDEADBEEFu); }

std::vector<ByteBuf> cnk_fixture_seeds() {
  std::vector<ByteBuf> seeds;

  seeds.push_back(cnk_header(0, 0));

  {
    ByteBuf b = cnk_header(2, 0x00000001);
    const ByteBuf text = {'h', 'e', 'l', 'l', 'o'};
    cnk_chunk(b, 0x01, text);
    const ByteBuf words = {0x11, 0x11, 0x11, 0x11, 0xff, 0xff, 0xff, 0xff};
    cnk_chunk(b, 0x02, words);
    seeds.push_back(b);
  }

  {
    // Deep file: five chunks including a benign META one. A single corrupted
    // length byte on the META chunk reproduces bug cnk-a.
    ByteBuf b = cnk_header(5, 0x000000aa);
    const ByteBuf text = {'c', 'h', 'u', 'n', 'k', 'e', 'd', ' ', 'c', 'o', 'n', 't',
                          'a', 'i', 'n', 'e', 'r'};
    cnk_chunk(b, 0x01, text);
    const ByteBuf blob = {8, 1, 2, 3, 4, 5, 6, 7};
    cnk_chunk(b, 0x03, blob);
    const ByteBuf words = {0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x80};
    cnk_chunk(b, 0x02, words);
    const ByteBuf meta = {'M', 'E', 'T', 'A', 1, 2, 3, 4};
    cnk_chunk(b, 0x7F, meta);
    const ByteBuf text2 = {'t', 'a', 'i', 'l'};
    cnk_chunk(b, 0x01, text2);
    seeds.push_back(b);
  }

  return seeds;
}

uint32_t cnk_total_edges() { return cnk::kEdges; }

}  // namespace wganfuzz
