#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "stged/model/config.hpp"
#include "stged/model/features.hpp"
#include "stged/model/layers.hpp"
#include "stged/model/spatial.hpp"
#include "stged/model/temporal.hpp"
#include "stged/tcn/windows.hpp"

namespace stged::model {

/// A model scoring ordered node pairs from the config().window snapshots
/// starting at position `start` of a PreparedData sequence.
class LinkPredictor {
public:
  explicit LinkPredictor(ModelConfig config);
  virtual ~LinkPredictor() = default;
  LinkPredictor(const LinkPredictor&) = delete;
  LinkPredictor& operator=(const LinkPredictor&) = delete;

  const ModelConfig& config() const noexcept { return config_; }
  diff::ParameterStore& parameters() noexcept { return params_; }
  const diff::ParameterStore& parameters() const noexcept { return params_; }

  /// Scores in (0, 1), one row per pair. A null dropout source means evaluation mode.
  virtual Var score_pairs(diff::Tape& tape, const PreparedData& data, std::size_t start,
                          std::span<const NodePair> pairs, DropoutSource* dropout) const = 0;

  /// Evaluation-mode scores as plain numbers.
  std::vector<double> predict(const PreparedData& data, std::size_t start, std::span<const NodePair> pairs) const;

protected:
  /// Throws ContractError unless the window fits in `data` and every pair is valid.
  void check_request(const PreparedData& data, std::size_t start, std::span<const NodePair> pairs) const;

  ModelConfig config_;
  diff::ParameterStore params_;
};

/// Spatial encoder per snapshot, recurrent encoder per node across the
/// window, MLP decoder on concatenated node embeddings.
class StgedModel final : public LinkPredictor {
public:
  StgedModel(ModelConfig config, std::uint64_t seed);

  /// Node embeddings Z (N x H): the top recurrent layer's last hidden state,
  /// or the last snapshot's spatial encoding without a temporal encoder.
  Var encode(diff::Tape& tape, const PreparedData& data, std::size_t start, DropoutSource* dropout) const;

  /// Evaluation-mode embeddings of a single window.
  diff::Tensor encode_window(const tcn::TemporalWindow& window, const FeatureScaler& scaler) const;

  Var score_pairs(diff::Tape& tape, const PreparedData& data, std::size_t start, std::span<const NodePair> pairs,
                  DropoutSource* dropout) const override;

  std::size_t embedding_width() const noexcept { return embedding_width_; }

private:
  SpatialEncoder spatial_;
  RecurrentStack temporal_;
  Mlp decoder_;
  std::size_t embedding_width_ = 0;
};

/// Non-graph baseline on per-pair step features: an MLP over the flattened
/// window, or an LSTM/GRU over the step sequence followed by an MLP head.
class PairBaseline final : public LinkPredictor {
public:
  PairBaseline(ModelConfig config, std::uint64_t seed);

  Var score_pairs(diff::Tape& tape, const PreparedData& data, std::size_t start, std::span<const NodePair> pairs,
                  DropoutSource* dropout) const override;

private:
  RecurrentStack recurrent_;
  Mlp head_;
};

/// Builds the model selected by config (validated). Weights are drawn from `seed`.
std::unique_ptr<LinkPredictor> make_model(const ModelConfig& config, std::uint64_t seed);

}  // namespace stged::model
