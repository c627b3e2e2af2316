#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "horncore/common.hpp"

namespace horncore {

template <typename S>
using MatrixRM = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename S>
using ArrayX = Eigen::Array<S, Eigen::Dynamic, 1>;

inline std::string shape_to_string(const std::vector<Index>& shape) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ")";
  return os.str();
}

/// Dense row-major tensor of arbitrary rank. Feature maps use the
/// (batch, channel, height, width) layout throughout.
template <typename S>
class Tensor {
 public:
  using Scalar = S;

  Tensor() = default;

  explicit Tensor(std::vector<Index> shape) : shape_(std::move(shape)) {
    data_.setZero(checked_size(shape_));
  }

  Tensor(std::vector<Index> shape, ArrayX<S> data) : shape_(std::move(shape)), data_(std::move(data)) {
    require_shape(checked_size(shape_) == data_.size(),
                  "tensor data length does not match shape " + shape_to_string(shape_));
  }

  static Tensor zeros(std::vector<Index> shape) { return Tensor(std::move(shape)); }

  static Tensor constant(std::vector<Index> shape, S value) {
    Tensor t(std::move(shape));
    t.data_.setConstant(value);
    return t;
  }

  static Tensor ones(std::vector<Index> shape) { return constant(std::move(shape), S(1)); }

  static Tensor from(std::vector<Index> shape, std::initializer_list<S> values) {
    Tensor t(std::move(shape));
    require_shape(static_cast<Index>(values.size()) == t.size(),
                  "tensor literal length does not match shape " + shape_to_string(t.shape_));
    Index i = 0;
    for (S v : values) t.data_[i++] = v;
    return t;
  }

  static Tensor scalar(S value) { return constant({1}, value); }

  Index rank() const { return static_cast<Index>(shape_.size()); }
  Index dim(Index i) const { return shape_[static_cast<std::size_t>(i)]; }
  Index size() const { return data_.size(); }
  const std::vector<Index>& shape() const { return shape_; }
  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  S* data() { return data_.data(); }
  const S* data() const { return data_.data(); }
  ArrayX<S>& array() { return data_; }
  const ArrayX<S>& array() const { return data_; }

  S& operator[](Index i) { return data_[i]; }
  S operator[](Index i) const { return data_[i]; }

  // rank-4 element access, (b, c, h, w)
  S& at(Index b, Index c, Index h, Index w) { return data_[offset4(b, c, h, w)]; }
  S at(Index b, Index c, Index h, Index w) const { return data_[offset4(b, c, h, w)]; }

  // rank-2 element access
  S& at(Index i, Index j) { return data_[i * shape_[1] + j]; }
  S at(Index i, Index j) const { return data_[i * shape_[1] + j]; }

  Index offset4(Index b, Index c, Index h, Index w) const {
    return ((b * shape_[1] + c) * shape_[2] + h) * shape_[3] + w;
  }

  Tensor reshaped(std::vector<Index> shape) const {
    require_shape(checked_size(shape) == size(), "reshape must preserve element count");
    return Tensor(std::move(shape), data_);
  }

  bool all_finite() const { return data_.isFinite().all(); }

  S max_abs() const { return data_.size() == 0 ? S(0) : data_.abs().maxCoeff(); }

 private:
  static Index checked_size(const std::vector<Index>& shape) {
    require_shape(!shape.empty(), "tensor rank must be at least 1");
    Index n = 1;
    for (Index d : shape) {
      require_shape(d >= 1, "tensor extents must be positive, got " + shape_to_string(shape));
      n *= d;
    }
    return n;
  }

  std::vector<Index> shape_;
  ArrayX<S> data_;
};

// 2-D matrix views over contiguous tensor storage.
template <typename S>
Eigen::Map<const MatrixRM<S>> as_matrix(const Tensor<S>& t, Index rows, Index cols) {
  require_shape(rows * cols == t.size(), "matrix view size mismatch");
  return Eigen::Map<const MatrixRM<S>>(t.data(), rows, cols);
}

template <typename S>
Eigen::Map<MatrixRM<S>> as_matrix(Tensor<S>& t, Index rows, Index cols) {
  require_shape(rows * cols == t.size(), "matrix view size mismatch");
  return Eigen::Map<MatrixRM<S>>(t.data(), rows, cols);
}

// View of one batch element of a BCHW map as a C x (H*W) matrix.
template <typename S>
Eigen::Map<const MatrixRM<S>> batch_matrix(const Tensor<S>& t, Index b) {
  const Index c = t.dim(1), hw = t.dim(2) * t.dim(3);
  return Eigen::Map<const MatrixRM<S>>(t.data() + b * c * hw, c, hw);
}

template <typename S>
Eigen::Map<MatrixRM<S>> batch_matrix(Tensor<S>& t, Index b) {
  const Index c = t.dim(1), hw = t.dim(2) * t.dim(3);
  return Eigen::Map<MatrixRM<S>>(t.data() + b * c * hw, c, hw);
}

}  // namespace horncore
