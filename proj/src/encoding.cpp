#include "wganfuzz/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wganfuzz {

size_t compute_maxlen(std::span<const size_t> lengths, bool literal_eq7) {
  if (lengths.empty()) throw std::invalid_argument("compute_maxlen on empty length list");
  size_t maxlen = *std::max_element(lengths.begin(), lengths.end());
  if (maxlen == 0) throw std::invalid_argument("zero-length testcase");
  if (literal_eq7) return maxlen + (32 - maxlen % 32);
  return (maxlen + 31) / 32 * 32;
}

EncodedBatch encode(std::span<const Testcase> testcases, const EncodingConfig& cfg) {
  if (testcases.empty()) throw std::invalid_argument("encode on empty testcase list");

  std::vector<size_t> lengths;
  lengths.reserve(testcases.size());
  for (const Testcase& tc : testcases) {
    if (tc.data.empty()) throw std::invalid_argument("empty testcase: " + tc.id);
    if (tc.data.size() > cfg.hard_cap)
      throw std::invalid_argument("testcase exceeds hard length cap: " + tc.id);
    lengths.push_back(tc.data.size());
  }

  EncodedBatch batch;
  batch.maxlen = compute_maxlen(lengths, cfg.literal_pad_rule);
  batch.original_lengths = std::move(lengths);
  batch.rows = Tensor2D(testcases.size(), batch.maxlen, -1.0);  // pad byte 0 -> -1.0

  for (size_t i = 0; i < testcases.size(); ++i) {
    double* row = batch.rows.row(i);
    const ByteBuf& data = testcases[i].data;
    for (size_t j = 0; j < data.size(); ++j)
      row[j] = (static_cast<double>(data[j]) - 128.0) / 128.0;
  }
  return batch;
}

ByteBuf decode(std::span<const double> row, size_t min_len) {
  if (min_len == 0) throw std::invalid_argument("min_len must be >= 1");
  if (row.size() < min_len) throw std::invalid_argument("row shorter than min_len");

  ByteBuf out(row.size());
  for (size_t i = 0; i < row.size(); ++i) {
    double v = std::round(row[i] * 128.0 + 128.0);
    out[i] = static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  size_t len = out.size();
  while (len > min_len && out[len - 1] == 0) --len;
  out.resize(len);
  return out;
}

std::vector<Tensor2D> epoch_batches(const EncodedBatch& batch, size_t batch_size, Rng& rng) {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  const size_t n = batch.rows.rows();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Tensor2D> out;
  for (size_t start = 0; start < n; start += batch_size) {
    const size_t count = std::min(batch_size, n - start);
    Tensor2D b(count, batch.maxlen);
    for (size_t r = 0; r < count; ++r)
      std::copy_n(batch.rows.row(order[start + r]), batch.maxlen, b.row(r));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace wganfuzz
