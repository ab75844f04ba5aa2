#include "stged/diff/tape.hpp"

#include "stged/core/errors.hpp"

namespace stged::diff {

const Tensor& Var::value() const {
  if (!tape_) throw ContractError("var: uninitialised handle");
  return tape_->value(id_);
}

Var Tape::constant(Tensor value) {
  Node n;
  n.op = "constant";
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

Var Tape::leaf(Tensor value) {
  Node n;
  n.op = "leaf";
  n.value = std::move(value);
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

Var Tape::param(Parameter& p) {
  if (auto it = param_nodes_.find(&p); it != param_nodes_.end()) return Var(this, it->second);
  Node n;
  n.op = "param:" + p.name;
  n.external = &p.value;
  n.parameter = &p;
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  param_nodes_.emplace(&p, nodes_.size() - 1);
  return Var(this, nodes_.size() - 1);
}

Var Tape::record(std::string_view op, Tensor value, const std::vector<std::size_t>& operands, BackwardFn backward) {
  if (!value.all_finite()) throw NumericError(std::string(op) + ": non-finite forward value");
  Node n;
  n.op = op;
  n.value = std::move(value);
  for (auto id : operands) n.requires_grad = n.requires_grad || nodes_[id].requires_grad;
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

const Tensor& Tape::value(std::size_t id) const {
  const Node& n = nodes_[id];
  return n.external ? *n.external : n.value;
}

Tensor& Tape::grad_slot(std::size_t id) {
  if (grads_[id].empty()) grads_[id] = Tensor(value(id).shape(), 0.0);
  return grads_[id];
}

void Tape::backward(Var output) {
  if (&output.tape() != this) throw ContractError("backward: output recorded on a different tape");
  if (value(output.id()).size() != 1)
    throw ContractError("backward: output must be scalar, got shape " + shape_string(value(output.id()).shape()));

  grads_.assign(nodes_.size(), Tensor());
  grads_[output.id()] = Tensor(value(output.id()).shape(), 1.0);
  for (std::size_t id = output.id() + 1; id-- > 0;) {
    Node& n = nodes_[id];
    if (!n.requires_grad || grads_[id].empty()) continue;
    if (n.backward) n.backward(*this, id);
    if (n.parameter) n.parameter->grad.accumulate(grads_[id]);
  }
}

Tensor Tape::grad(Var v) const {
  if (v.id() < grads_.size() && !grads_[v.id()].empty()) return grads_[v.id()];
  return Tensor(value(v.id()).shape(), 0.0);
}

}  // namespace stged::diff
