#pragma once

#include <cstddef>
#include <vector>

namespace wganfuzz {

// Row-major 2-D array of doubles. The only numeric container used by the
// network code; training runs in 64-bit throughout.
class Tensor2D {
 public:
  Tensor2D() = default;
  Tensor2D(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  // Row r as a contiguous range.
  const double* row(size_t r) const { return data_.data() + r * cols_; }
  double* row(size_t r) { return data_.data() + r * cols_; }

  bool all_finite() const;
  bool same_shape(const Tensor2D& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool operator==(const Tensor2D& o) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// GEMM kernels; shapes are checked and mismatches throw std::invalid_argument.
Tensor2D matmul(const Tensor2D& a, const Tensor2D& b);      // (n,k)·(k,m) -> (n,m)
Tensor2D matmul_abt(const Tensor2D& a, const Tensor2D& b);  // (n,k)·(m,k)ᵀ -> (n,m)
Tensor2D matmul_atb(const Tensor2D& a, const Tensor2D& b);  // (k,n)ᵀ·(k,m) -> (n,m)

Tensor2D vstack(const Tensor2D& top, const Tensor2D& bottom);

}  // namespace wganfuzz
