#include "wganfuzz/targets.hpp"

namespace wganfuzz {

// MELF object: 16-byte header (magic "MELF", class, endianness, version,
// flags, section count, table offset, reserved), then a table of 8-byte
// section entries (u32 offset, u16 size, u8 type, u8 sflags) whose payload
// ranges must stay inside the file. See docs/targets.md.
namespace melf {

constexpr uint32_t kEdges = 72;

enum : uint32_t {
  E_ENTRY = 0,
  E_TOO_SHORT = 1,
  E_MAGIC_OK = 2,
  E_MAGIC_BAD = 3,
  E_HDR_SHORT = 4,
  E_HDR_OK = 5,
  E_CLASS32 = 6,
  E_CLASS64 = 7,
  E_CLASS_BAD = 8,
  E_ENDIAN_LE = 9,
  E_ENDIAN_BE = 10,
  E_ENDIAN_BAD = 11,
  E_VERSION_OK = 12,
  E_VERSION_BAD = 13,
  E_FLAGS_OK = 14,
  E_FLAGS_BAD = 15,
  E_RESERVED_OK = 16,
  E_RESERVED_BAD = 17,
  E_COUNT_ZERO = 18,
  E_COUNT_POS = 19,
  E_COUNT_HUGE = 20,
  E_SHOFF_IN_HEADER = 21,
  E_SHOFF_OK = 22,
  E_TABLE_OVERRUN = 23,
  E_TABLE_FITS = 24,
  E_SECTION_ITER = 25,
  E_SECTION_DEEP = 26,
  E_TYPE_NULL = 27,
  E_NULL_NONEMPTY = 28,
  E_NULL_OK = 29,
  E_TYPE_CODE = 30,
  E_CODE_MISALIGNED = 31,
  E_CODE_OOB = 32,
  E_CODE_OK = 33,
  E_CODE_LARGE = 34,
  E_TYPE_DATA = 35,
  E_DATA_OOB = 36,
  E_DATA_OK = 37,
  E_DATA_LARGE = 38,
  E_TYPE_STRTAB = 39,
  E_STRTAB_EMPTY = 40,
  E_STRTAB_OOB = 41,
  E_STRTAB_UNTERMINATED = 42,
  E_STRTAB_OK = 43,
  E_STRTAB_MULTI = 44,
  E_TYPE_NOTE = 45,
  E_NOTE_SMALL = 46,
  E_NOTE_OOB = 47,
  E_NOTE_NAMED = 48,
  E_NOTE_OK = 49,
  E_TYPE_DEBUG = 50,
  E_DEBUG_EXTENDED = 51,
  E_DEBUG_BIG = 52,
  E_DEBUG_OOB_FAULT = 53,
  E_DEBUG_EXT_OK = 54,
  E_DEBUG_OOB = 55,
  E_DEBUG_OK = 56,
  E_TYPE_UNKNOWN = 57,
  E_SFLAGS_BAD = 58,
  E_PARSE_OK = 59,
  E_FILE_LARGE = 60,
  E_HAS_STRTAB_FLAG = 61,
  E_STRIPPED_FLAG = 62,
  E_SEC_ALLOC = 63,
  E_SEC_WRITE = 64,
  E_SEC_EXT_MISPLACED = 65,
  E_OFFSET_ZERO = 66,
  E_OFFSET_POS = 67,
  E_MANY_SECTIONS = 68,
  E_PAYLOAD_HEAVY = 69,
  E_CLASS64_BE = 70,
  E_SEC_EMPTY = 71,
};

uint16_t read_u16(ByteView b, size_t off, bool big_endian) {
  if (big_endian) return static_cast<uint16_t>((b[off] << 8) | b[off + 1]);
  return read_u16le(b, off);
}

uint32_t read_u32(ByteView b, size_t off, bool big_endian) {
  if (big_endian)
    return (static_cast<uint32_t>(b[off]) << 24) | (static_cast<uint32_t>(b[off + 1]) << 16) |
           (static_cast<uint32_t>(b[off + 2]) << 8) | static_cast<uint32_t>(b[off + 3]);
  return read_u32le(b, off);
}

}  // namespace melf

ParseResult melf_parse(ByteView in, EdgeTrace& trace) {
  using namespace melf;
  auto edge = [&trace](uint32_t id) { trace.push_back(id); };
  auto fail = [](std::string msg) { return ParseResult{ParseStatus::Error, 0, std::move(msg)}; };

  edge(E_ENTRY);
  if (in.size() < 4) {
    edge(E_TOO_SHORT);
    return fail("too short");
  }
  if (!(in[0] == 'M' && in[1] == 'E' && in[2] == 'L' && in[3] == 'F')) {
    edge(E_MAGIC_BAD);
    return fail("bad magic");
  }
  edge(E_MAGIC_OK);

  if (in.size() < 16) {
    edge(E_HDR_SHORT);
    return fail("truncated header");
  }
  edge(E_HDR_OK);
  if (in.size() > 256) edge(E_FILE_LARGE);

  const uint8_t klass = in[4];
  if (klass == 1)
    edge(E_CLASS32);
  else if (klass == 2)
    edge(E_CLASS64);
  else {
    edge(E_CLASS_BAD);
    return fail("bad class");
  }

  const uint8_t endian = in[5];
  bool big_endian = false;
  if (endian == 1)
    edge(E_ENDIAN_LE);
  else if (endian == 2) {
    edge(E_ENDIAN_BE);
    big_endian = true;
  } else {
    edge(E_ENDIAN_BAD);
    return fail("bad endianness");
  }
  if (klass == 2 && big_endian) edge(E_CLASS64_BE);

  if (in[6] != 1) {
    edge(E_VERSION_BAD);
    return fail("unsupported version");
  }
  edge(E_VERSION_OK);

  const uint8_t flags = in[7];
  if (flags & ~0x03u) {
    edge(E_FLAGS_BAD);
    return fail("unknown header flags");
  }
  edge(E_FLAGS_OK);
  if (flags & 0x01) edge(E_HAS_STRTAB_FLAG);
  if (flags & 0x02) edge(E_STRIPPED_FLAG);

  const uint16_t count = read_u16(in, 8, big_endian);
  const uint32_t shoff = read_u32(in, 10, big_endian);
  const uint16_t reserved = read_u16(in, 14, big_endian);
  if (reserved != 0) {
    edge(E_RESERVED_BAD);
    return fail("reserved field not zero");
  }
  edge(E_RESERVED_OK);

  if (count == 0) {
    edge(E_COUNT_ZERO);
    edge(E_PARSE_OK);
    return {};
  }
  edge(E_COUNT_POS);
  if (count > 64) {
    edge(E_COUNT_HUGE);
    return fail("too many sections");
  }
  if (count >= 8) edge(E_MANY_SECTIONS);

  if (shoff < 16) {
    edge(E_SHOFF_IN_HEADER);
    return fail("section table overlaps header");
  }
  edge(E_SHOFF_OK);
  if (static_cast<uint64_t>(shoff) + static_cast<uint64_t>(count) * 8 > in.size()) {
    edge(E_TABLE_OVERRUN);
    return fail("section table overruns file");
  }
  edge(E_TABLE_FITS);

  uint64_t payload_total = 0;
  for (uint16_t i = 0; i < count; ++i) {
    edge(E_SECTION_ITER);
    if (i >= 4) edge(E_SECTION_DEEP);

    const size_t ent = shoff + static_cast<size_t>(i) * 8;
    const uint32_t offset = read_u32(in, ent, big_endian);
    const uint16_t size = read_u16(in, ent + 4, big_endian);
    const uint8_t type = in[ent + 6];
    const uint8_t sflags = in[ent + 7];

    if (sflags & ~0x83u) {
      edge(E_SFLAGS_BAD);
      return fail("unknown section flags");
    }
    if (sflags & 0x01) edge(E_SEC_ALLOC);
    if (sflags & 0x02) edge(E_SEC_WRITE);
    if ((sflags & 0x80) && type != 5) edge(E_SEC_EXT_MISPLACED);
    edge(offset == 0 ? E_OFFSET_ZERO : E_OFFSET_POS);
    if (size == 0) edge(E_SEC_EMPTY);
    payload_total += size;

    const bool in_bounds =
        offset <= in.size() && static_cast<uint64_t>(offset) + size <= in.size();

    switch (type) {
      case 0:  // NULL
        edge(E_TYPE_NULL);
        if (offset != 0 || size != 0) {
          edge(E_NULL_NONEMPTY);
          return fail("null section with contents");
        }
        edge(E_NULL_OK);
        break;
      case 1:  // CODE
        edge(E_TYPE_CODE);
        if (size % 4 != 0) {
          edge(E_CODE_MISALIGNED);
          return fail("code section size misaligned");
        }
        if (!in_bounds) {
          edge(E_CODE_OOB);
          return fail("code section out of bounds");
        }
        edge(E_CODE_OK);
        if (size >= 64) edge(E_CODE_LARGE);
        break;
      case 2:  // DATA
        edge(E_TYPE_DATA);
        if (!in_bounds) {
          edge(E_DATA_OOB);
          return fail("data section out of bounds");
        }
        edge(E_DATA_OK);
        if (size >= 128) edge(E_DATA_LARGE);
        break;
      case 3: {  // STRTAB
        edge(E_TYPE_STRTAB);
        if (size == 0) {
          edge(E_STRTAB_EMPTY);
          return fail("empty string table");
        }
        if (!in_bounds) {
          edge(E_STRTAB_OOB);
          return fail("string table out of bounds");
        }
        if (in[offset + size - 1] != 0) {
          edge(E_STRTAB_UNTERMINATED);
          return fail("string table not NUL-terminated");
        }
        edge(E_STRTAB_OK);
        size_t nuls = 0;
        for (size_t p = offset; p < offset + size; ++p)
          if (in[p] == 0) ++nuls;
        if (nuls >= 2) edge(E_STRTAB_MULTI);
        break;
      }
      case 4:  // NOTE
        edge(E_TYPE_NOTE);
        if (size < 8) {
          edge(E_NOTE_SMALL);
          return fail("note section too small");
        }
        if (!in_bounds) {
          edge(E_NOTE_OOB);
          return fail("note section out of bounds");
        }
        if (in[offset] == 'N' && in[offset + 1] == 'O' && in[offset + 2] == 'T' &&
            in[offset + 3] == 'E')
          edge(E_NOTE_NAMED);
        edge(E_NOTE_OK);
        break;
      case 5:  // DEBUG
        edge(E_TYPE_DEBUG);
        if (sflags & 0x80) {
          edge(E_DEBUG_EXTENDED);
          if (size > 0x20) {
            edge(E_DEBUG_BIG);
            // Extended debug sections skip the shared bounds check; an
            // out-of-range payload walks off the end of the file.
            if (!in_bounds) {
              edge(E_DEBUG_OOB_FAULT);
              return {ParseStatus::Fault, 11 /*SIGSEGV*/, "melf-a"};
            }
            edge(E_DEBUG_EXT_OK);
            break;
          }
        }
        if (!in_bounds) {
          edge(E_DEBUG_OOB);
          return fail("debug section out of bounds");
        }
        edge(E_DEBUG_OK);
        break;
      default:
        edge(E_TYPE_UNKNOWN);
        return fail("unknown section type");
    }
  }

  if (payload_total > 256) edge(E_PAYLOAD_HEAVY);
  edge(E_PARSE_OK);
  return {};
}

namespace {

void put_u16(ByteBuf& b, uint16_t v, bool big_endian) {
  if (big_endian) {
    b.push_back(static_cast<uint8_t>(v >> 8));
    b.push_back(static_cast<uint8_t>(v & 0xff));
  } else {
    put_u16le(b, v);
  }
}

void put_u32(ByteBuf& b, uint32_t v, bool big_endian) {
  if (big_endian)
    for (int i = 3; i >= 0; --i) b.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
  else
    put_u32le(b, v);
}

ByteBuf melf_header(uint8_t klass, uint8_t endian, uint8_t flags, uint16_t count, uint32_t shoff) {
  const bool be = endian == 2;
  ByteBuf b = {'M', 'E', 'L', 'F', klass, endian, 1, flags};
  put_u16(b, count, be);
  put_u32(b, shoff, be);
  put_u16(b, 0, be);  // reserved
  return b;
}

struct SectionEntry {
  uint32_t offset;
  uint16_t size;
  uint8_t type;
  uint8_t sflags;
};

// Header, then payload blob, then the section table at the end.
ByteBuf melf_file(uint8_t klass, uint8_t endian, uint8_t flags,
                  const std::vector<SectionEntry>& sections, const ByteBuf& payload) {
  const bool be = endian == 2;
  const uint32_t shoff = static_cast<uint32_t>(16 + payload.size());
  ByteBuf b = melf_header(klass, endian, flags, static_cast<uint16_t>(sections.size()), shoff);
  b.insert(b.end(), payload.begin(), payload.end());
  for (const auto& s : sections) {
    put_u32(b, s.offset, be);
    put_u16(b, s.size, be);
    b.push_back(s.type);
    b.push_back(s.sflags);
  }
  return b;
}

}  // namespace

ByteBuf melf_witness_oob() {
  // One extended debug section whose payload range runs past end of file.
  ByteBuf payload(0x30, 0xdd);
  return melf_file(1, 1, 0, {{0x1000, 0x40, 5, 0x80}}, payload);
}

std::vector<ByteBuf> melf_fixture_seeds() {
  std::vector<ByteBuf> seeds;

  seeds.push_back(melf_header(1, 1, 0, 0, 16));

  {
    ByteBuf payload;
    for (int i = 0; i < 16; ++i) payload.push_back(static_cast<uint8_t>(i));  // code, 16 bytes
    const size_t str_off = 16 + payload.size();
    const ByteBuf strtab = {'m', 'a', 'i', 'n', 0, 't', 'e', 'x', 't', 0};
    ByteBuf full = payload;
    full.insert(full.end(), strtab.begin(), strtab.end());
    seeds.push_back(melf_file(1, 1, 0x01,
                              {{16, 16, 1, 0x01},
                               {static_cast<uint32_t>(str_off), 10, 3, 0}},
                              full));
  }

  {
    // Big-endian, five sections, includes a benign extended debug section:
    // in bounds, but one corrupted offset byte away from bug melf-a.
    ByteBuf payload;
    const ByteBuf note = {'N', 'O', 'T', 'E', 1, 0, 0, 0};
    payload.insert(payload.end(), note.begin(), note.end());
    for (int i = 0; i < 0x24; ++i) payload.push_back(0xd0);              // debug blob
    for (int i = 0; i < 8; ++i) payload.push_back(static_cast<uint8_t>(0x10 + i));  // data
    const ByteBuf strtab = {'s', 0};
    payload.insert(payload.end(), strtab.begin(), strtab.end());
    seeds.push_back(melf_file(2, 2, 0x03,
                              {{0, 0, 0, 0},
                               {16, 8, 4, 0},
                               {24, 0x24, 5, 0x80},
                               {16 + 8 + 0x24, 8, 2, 0x03},
                               {16 + 8 + 0x24 + 8, 2, 3, 0}},
                              payload));
  }

  return seeds;
}

uint32_t melf_total_edges() { return melf::kEdges; }

}  // namespace wganfuzz
