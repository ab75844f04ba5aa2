#include "stged/train/ablation.hpp"

#include <exception>

namespace stged::train {

std::vector<AblationCell> ablation_cells() {
  using model::SpatialKind;
  using model::TemporalKind;
  std::vector<AblationCell> cells;
  for (auto t : {TemporalKind::none, TemporalKind::gru, TemporalKind::lstm})
    for (auto s : {SpatialKind::gcn, SpatialKind::gat, SpatialKind::gatv2, SpatialKind::gtc}) {
      AblationCell c;
      c.spatial = s;
      c.temporal = t;
      cells.push_back(c);
    }
  return cells;
}

std::vector<AblationCell> run_ablation(const Experiment& experiment, const model::ModelConfig& base,
                                       const TrainConfig& train, std::uint64_t model_seed,
                                       const std::function<void(const AblationCell&)>& on_cell) {
  auto cells = ablation_cells();
  for (auto& cell : cells) {
    try {
      auto config = base;
      config.baseline = model::BaselineKind::none;
      config.spatial = cell.spatial;
      config.temporal = cell.temporal;
      config.window = experiment.window;
      auto m = model::make_model(config, model_seed);
      const auto result = train_model(*m, experiment, train);
      cell.epochs_run = result.curve.size();
      cell.metrics = evaluate(*m, experiment, experiment.split.test, config.threshold);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
    if (on_cell) on_cell(cell);
  }
  return cells;
}

}  // namespace stged::train
