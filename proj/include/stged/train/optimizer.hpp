#pragma once

#include <string>
#include <vector>

#include "stged/diff/parameter.hpp"

namespace stged::train {

enum class OptimizerKind { adam, sgd };

std::string to_string(OptimizerKind k);
OptimizerKind parse_optimizer(const std::string& s);

/// Applies one update from the gradients held in the store. State is laid
/// out in store order, so an optimizer must stay bound to one store.
class Optimizer {
public:
  Optimizer(OptimizerKind kind, double learning_rate);

  void step(diff::ParameterStore& params);
  std::size_t steps() const noexcept { return t_; }

private:
  OptimizerKind kind_;
  double lr_;
  double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  std::size_t t_ = 0;
  std::vector<diff::Tensor> m_, v_;
};

}  // namespace stged::train
