#include "wganfuzz/tensor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace wganfuzz {

namespace {

using EMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using EMapMut = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

EMap map(const Tensor2D& t) { return EMap(t.data(), t.rows(), t.cols()); }

}  // namespace

bool Tensor2D::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Tensor2D matmul(const Tensor2D& a, const Tensor2D& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  Tensor2D c(a.rows(), b.cols());
  EMapMut(c.data(), c.rows(), c.cols()).noalias() = map(a) * map(b);
  return c;
}

Tensor2D matmul_abt(const Tensor2D& a, const Tensor2D& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("matmul_abt: inner dimensions differ");
  Tensor2D c(a.rows(), b.rows());
  EMapMut(c.data(), c.rows(), c.cols()).noalias() = map(a) * map(b).transpose();
  return c;
}

Tensor2D matmul_atb(const Tensor2D& a, const Tensor2D& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("matmul_atb: inner dimensions differ");
  Tensor2D c(a.cols(), b.cols());
  EMapMut(c.data(), c.rows(), c.cols()).noalias() = map(a).transpose() * map(b);
  return c;
}

Tensor2D vstack(const Tensor2D& top, const Tensor2D& bottom) {
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column counts differ");
  Tensor2D out(top.rows() + bottom.rows(), top.cols());
  std::copy(top.values().begin(), top.values().end(), out.values().begin());
  std::copy(bottom.values().begin(), bottom.values().end(), out.values().begin() + top.size());
  return out;
}

}  // namespace wganfuzz
