#pragma once

#include <string>
#include <vector>

#include "stged/model/config.hpp"
#include "stged/train/trainer.hpp"

namespace stged::train {

struct AblationCell {
  model::SpatialKind spatial = model::SpatialKind::gtc;
  model::TemporalKind temporal = model::TemporalKind::none;
  bool ok = false;
  std::string error;  // set when training or evaluation failed
  MetricsReport metrics;
  std::size_t epochs_run = 0;
};

/// The spatial encoders crossed with {none, gru, lstm}, in table order:
/// all spatial-only cells, then the GRU row, then the LSTM row.
std::vector<AblationCell> ablation_cells();

/// Trains and tests every cell with the same model seed and training
/// config. A failing cell is recorded and the grid continues.
std::vector<AblationCell> run_ablation(const Experiment& experiment, const model::ModelConfig& base,
                                       const TrainConfig& train, std::uint64_t model_seed,
                                       const std::function<void(const AblationCell&)>& on_cell = {});

}  // namespace stged::train
