#include "stged/diff/parameter.hpp"

#include <cmath>

#include "stged/core/errors.hpp"
#include "stged/core/rng.hpp"

namespace stged::diff {

Parameter::Parameter(std::string n, Tensor v) : name(std::move(n)), value(std::move(v)), grad(value.shape(), 0.0) {}

Parameter& ParameterStore::add(std::string name, Tensor value) {
  if (find(name)) throw ContractError("parameter store: duplicate name '" + name + "'");
  params_.push_back(std::make_unique<Parameter>(std::move(name), std::move(value)));
  return *params_.back();
}

Parameter& ParameterStore::add_glorot(std::string name, std::size_t rows, std::size_t cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Tensor t = Tensor::matrix(rows, cols);
  for (auto& v : t.data()) v = rng.uniform(-limit, limit);
  return add(std::move(name), std::move(t));
}

Parameter& ParameterStore::add_zeros(std::string name, std::size_t rows, std::size_t cols) {
  return add(std::move(name), Tensor::matrix(rows, cols));
}

Parameter* ParameterStore::find(const std::string& name) {
  for (auto& p : params_)
    if (p->name == name) return p.get();
  return nullptr;
}

Parameter& ParameterStore::get(const std::string& name) {
  if (auto* p = find(name)) return *p;
  throw ContractError("parameter store: no parameter '" + name + "'");
}

const Parameter& ParameterStore::get(const std::string& name) const {
  return const_cast<ParameterStore*>(this)->get(name);
}

std::size_t ParameterStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p->value.size();
  return n;
}

void ParameterStore::zero_grad() {
  for (auto& p : params_) p->zero_grad();
}

std::vector<Tensor> ParameterStore::values() const {
  std::vector<Tensor> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(p->value);
  return out;
}

void ParameterStore::assign(const std::vector<Tensor>& values) {
  if (values.size() != params_.size()) throw ContractError("parameter store: assign count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].shape() != params_[i]->value.shape())
      throw ContractError("parameter store: assign shape mismatch for '" + params_[i]->name + "'");
    params_[i]->value = values[i];
  }
}

}  // namespace stged::diff
