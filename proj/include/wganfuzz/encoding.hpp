#pragma once

#include <span>
#include <vector>

#include "wganfuzz/bytes.hpp"
#include "wganfuzz/corpus.hpp"
#include "wganfuzz/tensor.hpp"

namespace wganfuzz {

// Fixed-width normalized training rows. Every element lies in [-1, 1];
// positions at or past original_lengths[i] hold the pad value -1.0
// (byte 0 padded before normalization).
struct EncodedBatch {
  Tensor2D rows;  // (n, maxlen)
  size_t maxlen = 0;
  std::vector<size_t> original_lengths;
};

struct EncodingConfig {
  size_t hard_cap = 4096;       // testcases longer than this are rejected
  bool literal_pad_rule = false;  // pad an already-aligned maxlen up by a full 32
};

// Smallest multiple of 32 that is >= max(lengths). With literal_eq7 the
// unguarded rule maxlen + (32 - maxlen % 32) is applied instead, which bumps
// already-aligned lengths by a full 32.
size_t compute_maxlen(std::span<const size_t> lengths, bool literal_eq7 = false);

// byte b -> (b - 128) / 128, after zero-padding each row to maxlen.
EncodedBatch encode(std::span<const Testcase> testcases, const EncodingConfig& cfg = {});

// clamp(round(v*128 + 128), 0, 255), then the maximal trailing run of 0-bytes
// is trimmed but never below min_len. Total on arbitrary real vectors.
ByteBuf decode(std::span<const double> row, size_t min_len);

// One epoch worth of minibatches: rows shuffled, final short batch kept.
std::vector<Tensor2D> epoch_batches(const EncodedBatch& batch, size_t batch_size, Rng& rng);

}  // namespace wganfuzz
