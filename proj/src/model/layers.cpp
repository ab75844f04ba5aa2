#include "stged/model/layers.hpp"

#include "stged/core/errors.hpp"

namespace stged::model {

DropoutSource::DropoutSource(double p, std::uint64_t seed) : p_(p), rng_(seed) {
  if (!(p >= 0.0 && p < 1.0)) throw ContractError("dropout probability must lie in [0, 1)");
}

diff::Tensor DropoutSource::mask(std::size_t rows, std::size_t cols) {
  diff::Tensor m = diff::Tensor::matrix(rows, cols);
  const double keep = 1.0 / (1.0 - p_);
  for (auto& v : m.data()) v = rng_.uniform() < p_ ? 0.0 : keep;
  return m;
}

Var apply_dropout(Var x, DropoutSource* dropout) {
  if (dropout == nullptr || dropout->p() == 0.0) return x;
  return diff::dropout(x, dropout->mask(x.rows(), x.cols()));
}

Dense Dense::create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out, Rng& rng) {
  return {&store.add_glorot(name + ".w", in, out, rng), &store.add_zeros(name + ".b", 1, out)};
}

Var Dense::operator()(Var x) const {
  auto& tape = x.tape();
  return diff::add_row(diff::matmul(x, tape.param(*w)), tape.param(*b));
}

Mlp::Mlp(diff::ParameterStore& store, const std::string& name, std::size_t in, const std::vector<std::size_t>& hidden,
         std::size_t out, Rng& rng)
    : in_(in) {
  std::size_t width = in;
  for (std::size_t k = 0; k < hidden.size(); ++k) {
    layers_.push_back(Dense::create(store, name + "." + std::to_string(k), width, hidden[k], rng));
    width = hidden[k];
  }
  layers_.push_back(Dense::create(store, name + ".out", width, out, rng));
}

Var Mlp::forward(Var x, DropoutSource* dropout) const {
  if (x.cols() != in_)
    throw ContractError("mlp: expected " + std::to_string(in_) + " input columns, got " + std::to_string(x.cols()));
  for (std::size_t k = 0; k + 1 < layers_.size(); ++k) x = apply_dropout(diff::leaky_relu(layers_[k](x)), dropout);
  return layers_.back()(x);
}

LstmWeights LstmWeights::create(diff::ParameterStore& store, const std::string& name, std::size_t in,
                                std::size_t hidden, Rng& rng) {
  LstmWeights w{};
  w.wf = &store.add_glorot(name + ".wf", in + hidden, hidden, rng);
  w.wi = &store.add_glorot(name + ".wi", in + hidden, hidden, rng);
  w.wo = &store.add_glorot(name + ".wo", in + hidden, hidden, rng);
  w.wg = &store.add_glorot(name + ".wg", in + hidden, hidden, rng);
  w.bf = &store.add_zeros(name + ".bf", 1, hidden);
  w.bi = &store.add_zeros(name + ".bi", 1, hidden);
  w.bo = &store.add_zeros(name + ".bo", 1, hidden);
  w.bg = &store.add_zeros(name + ".bg", 1, hidden);
  return w;
}

namespace {

Var gate(Var xh, diff::Parameter* w, diff::Parameter* b) {
  auto& tape = xh.tape();
  return diff::add_row(diff::matmul(xh, tape.param(*w)), tape.param(*b));
}

}  // namespace

std::pair<Var, Var> lstm_step(Var x, Var h_prev, Var c_prev, const LstmWeights& w) {
  const Var parts[] = {x, h_prev};
  Var xh = diff::concat_cols(parts);
  Var f = diff::sigmoid(gate(xh, w.wf, w.bf));
  Var i = diff::sigmoid(gate(xh, w.wi, w.bi));
  Var o = diff::sigmoid(gate(xh, w.wo, w.bo));
  Var g = diff::tanh(gate(xh, w.wg, w.bg));
  Var c = f * c_prev + i * g;
  Var h = o * diff::tanh(c);
  return {h, c};
}

GruWeights GruWeights::create(diff::ParameterStore& store, const std::string& name, std::size_t in,
                              std::size_t hidden, Rng& rng) {
  GruWeights w{};
  w.wz = &store.add_glorot(name + ".wz", in + hidden, hidden, rng);
  w.wr = &store.add_glorot(name + ".wr", in + hidden, hidden, rng);
  w.wn = &store.add_glorot(name + ".wn", in + hidden, hidden, rng);
  w.bz = &store.add_zeros(name + ".bz", 1, hidden);
  w.br = &store.add_zeros(name + ".br", 1, hidden);
  w.bn = &store.add_zeros(name + ".bn", 1, hidden);
  return w;
}

Var gru_step(Var x, Var h_prev, const GruWeights& w) {
  const Var parts[] = {x, h_prev};
  Var xh = diff::concat_cols(parts);
  Var z = diff::sigmoid(gate(xh, w.wz, w.bz));
  Var r = diff::sigmoid(gate(xh, w.wr, w.br));
  const Var reset_parts[] = {x, r * h_prev};
  Var n = diff::tanh(gate(diff::concat_cols(reset_parts), w.wn, w.bn));
  return n + z * (h_prev - n);
}

Var decode_pairs(const Mlp& decoder, Var embeddings, const diff::Index& src, const diff::Index& dst,
                 DropoutSource* dropout) {
  const Var parts[] = {diff::gather_rows(embeddings, src), diff::gather_rows(embeddings, dst)};
  return diff::sigmoid(decoder.forward(diff::concat_cols(parts), dropout));
}

}  // namespace stged::model
