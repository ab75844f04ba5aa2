#include "stged/model/temporal.hpp"

#include "stged/core/errors.hpp"

namespace stged::model {

RecurrentStack::RecurrentStack(diff::ParameterStore& store, const std::string& name, TemporalKind kind,
                               std::size_t in, std::size_t layers, std::size_t hidden, std::size_t top, Rng& rng)
    : kind_(kind) {
  if (kind == TemporalKind::none) throw ConfigError("recurrent stack: kind 'none' has no layers");
  if (layers == 0) throw ConfigError("recurrent stack: at least one layer is required");
  std::size_t width = in;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t out = l + 1 == layers ? top : hidden;
    const std::string layer_name = name + "." + std::to_string(l);
    if (kind == TemporalKind::lstm)
      lstm_.push_back(LstmWeights::create(store, layer_name + ".lstm", width, out, rng));
    else
      gru_.push_back(GruWeights::create(store, layer_name + ".gru", width, out, rng));
    widths_.push_back(out);
    width = out;
  }
}

Var RecurrentStack::forward(std::span<const Var> sequence, DropoutSource* dropout) const {
  if (sequence.empty()) throw ContractError("recurrent stack: empty sequence");
  auto& tape = sequence.front().tape();
  const std::size_t rows = sequence.front().rows();
  std::vector<Var> inputs(sequence.begin(), sequence.end());
  for (std::size_t l = 0; l < widths_.size(); ++l) {
    Var h = tape.constant(diff::Tensor::matrix(rows, widths_[l]));
    Var c = h;
    for (std::size_t t = 0; t < inputs.size(); ++t) {
      if (kind_ == TemporalKind::lstm)
        std::tie(h, c) = lstm_step(inputs[t], h, c, lstm_[l]);
      else
        h = gru_step(inputs[t], h, gru_[l]);
      inputs[t] = l + 1 < widths_.size() ? apply_dropout(h, dropout) : h;
    }
  }
  return inputs.back();
}

}  // namespace stged::model
