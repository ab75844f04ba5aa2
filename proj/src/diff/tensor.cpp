#include "stged/diff/tensor.hpp"

#include <Eigen/Core>
#include <cmath>

#include "stged/core/errors.hpp"

namespace stged::diff {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return shape.empty() ? 0 : n;
}

std::string shape_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

namespace {
void check_shape(const Shape& shape) {
  if (shape.empty()) throw ContractError("tensor: empty shape");
  for (auto d : shape)
    if (d == 0) throw ContractError("tensor: zero dimension in shape " + shape_string(shape));
}
}  // namespace

Tensor::Tensor(Shape shape, double fill) : shape_(std::move(shape)) {
  check_shape(shape_);
  values_.assign(shape_size(shape_), fill);
}

Tensor::Tensor(Shape shape, std::vector<double> values) : shape_(std::move(shape)), values_(std::move(values)) {
  check_shape(shape_);
  if (values_.size() != shape_size(shape_))
    throw ContractError("tensor: " + std::to_string(values_.size()) + " values for shape " + shape_string(shape_));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, double fill) { return Tensor({rows, cols}, fill); }

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values) {
  return Tensor({rows, cols}, std::vector<double>(values));
}

std::size_t Tensor::rows() const {
  if (rank() != 2) throw ContractError("tensor: rows() on shape " + shape_string(shape_));
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (rank() != 2) throw ContractError("tensor: cols() on shape " + shape_string(shape_));
  return shape_[1];
}

void Tensor::fill(double value) {
  for (auto& v : values_) v = value;
}

void Tensor::accumulate(const Tensor& other) {
  if (other.shape_ != shape_)
    throw ContractError("tensor: accumulate " + shape_string(other.shape_) + " into " + shape_string(shape_));
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
}

bool Tensor::all_finite() const {
  return Eigen::Map<const Eigen::ArrayXd>(values_.data(), static_cast<Eigen::Index>(values_.size())).allFinite();
}

}  // namespace stged::diff
