#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stged/diff/parameter.hpp"
#include "stged/diff/tensor.hpp"

namespace stged::diff {

class Tape;

/// Handle to a value recorded on a Tape. Cheap to copy; valid while the tape lives.
class Var {
public:
  Var() = default;

  const Tensor& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  Tape& tape() const { return *tape_; }
  std::size_t id() const noexcept { return id_; }
  bool valid() const noexcept { return tape_ != nullptr; }

private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Define-by-run record of primitive operations. One tape per forward pass;
/// confined to a single thread.
class Tape {
public:
  /// Propagates the gradient held by node `self` into its operands.
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Non-differentiable input.
  Var constant(Tensor value);
  /// Differentiable input not tied to a Parameter; its gradient is read with grad().
  Var leaf(Tensor value);
  /// Differentiable view of a parameter. Repeated calls return the same node.
  Var param(Parameter& p);

  /// Appends the result of a primitive. Throws NumericError on non-finite values.
  Var record(std::string_view op, Tensor value, const std::vector<std::size_t>& operands, BackwardFn backward);

  /// Reverse sweep from a 1-element output. Parameter gradients are
  /// accumulated additively into Parameter::grad.
  void backward(Var output);

  const Tensor& value(std::size_t id) const;
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }

  /// Gradient of the last backward() output with respect to v (zeros if unreached).
  Tensor grad(Var v) const;

  /// Mutable gradient slot of a node, zero-initialised on first access.
  Tensor& grad_slot(std::size_t id);
  const Tensor& upstream(std::size_t id) const { return grads_[id]; }

  std::size_t size() const noexcept { return nodes_.size(); }

private:
  struct Node {
    std::string op;
    Tensor value;
    const Tensor* external = nullptr;  // parameter storage, not copied
    Parameter* parameter = nullptr;
    bool requires_grad = false;
    BackwardFn backward;
  };

  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
  std::unordered_map<const Parameter*, std::size_t> param_nodes_;
};

}  // namespace stged::diff
