#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stged/model/config.hpp"
#include "stged/model/layers.hpp"

namespace stged::model {

/// Stacked LSTM or GRU applied row-wise (one sequence per row). Lower layers
/// are `temporal_hidden` wide; the top layer is `top` wide.
class RecurrentStack {
public:
  RecurrentStack() = default;
  RecurrentStack(diff::ParameterStore& store, const std::string& name, TemporalKind kind, std::size_t in,
                 std::size_t layers, std::size_t hidden, std::size_t top, Rng& rng);

  TemporalKind kind() const noexcept { return kind_; }
  std::size_t output_size() const noexcept { return widths_.empty() ? 0 : widths_.back(); }

  /// Runs the sequence from zero state; returns the top layer's last hidden
  /// state. Dropout is applied between layers.
  Var forward(std::span<const Var> sequence, DropoutSource* dropout) const;

private:
  TemporalKind kind_ = TemporalKind::none;
  std::vector<std::size_t> widths_;
  std::vector<LstmWeights> lstm_;
  std::vector<GruWeights> gru_;
};

}  // namespace stged::model
