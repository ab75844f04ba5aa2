#include "stged/train/optimizer.hpp"

#include <cmath>

#include "stged/core/errors.hpp"

namespace stged::train {

std::string to_string(OptimizerKind k) { return k == OptimizerKind::adam ? "adam" : "sgd"; }

OptimizerKind parse_optimizer(const std::string& s) {
  if (s == "adam") return OptimizerKind::adam;
  if (s == "sgd") return OptimizerKind::sgd;
  throw ConfigError("unknown optimizer '" + s + "'");
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate) : kind_(kind), lr_(learning_rate) {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw ConfigError("learning rate must be finite and non-negative");
}

void Optimizer::step(diff::ParameterStore& params) {
  ++t_;
  if (kind_ == OptimizerKind::sgd) {
    for (auto& p : params)
      for (std::size_t k = 0; k < p->value.size(); ++k) p->value[k] -= lr_ * p->grad[k];
    return;
  }
  if (m_.empty()) {
    for (const auto& p : params) {
      m_.emplace_back(p->value.shape());
      v_.emplace_back(p->value.shape());
    }
  }
  if (m_.size() != params.size()) throw ContractError("optimizer state does not match the parameter store");
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  std::size_t idx = 0;
  for (auto& p : params) {
    auto& m = m_[idx];
    auto& v = v_[idx];
    ++idx;
    for (std::size_t k = 0; k < p->value.size(); ++k) {
      const double g = p->grad[k];
      m[k] = beta1_ * m[k] + (1.0 - beta1_) * g;
      v[k] = beta2_ * v[k] + (1.0 - beta2_) * g * g;
      p->value[k] -= lr_ * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps_);
    }
  }
}

}  // namespace stged::train
