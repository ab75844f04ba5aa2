#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "stged/model/predictor.hpp"
#include "stged/tcn/types.hpp"
#include "stged/tcn/windows.hpp"
#include "stged/train/metrics.hpp"
#include "stged/train/optimizer.hpp"
#include "stged/train/split.hpp"

namespace stged::train {

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t epochs = 20;
  std::size_t batch_windows = 8;  // windows per optimizer step
  OptimizerKind optimizer = OptimizerKind::adam;
  std::size_t patience = 5;  // epochs without validation improvement; 0 disables early stopping
  std::uint64_t seed = 1;

  static TrainConfig desk() { return {}; }
  /// Learning rate and epoch count of the published experiments.
  static TrainConfig paper();

  /// Throws ConfigError.
  void validate() const;
};

/// Windows of one dataset, their split, and features normalised with
/// statistics of the training windows' snapshots.
struct Experiment {
  std::size_t window = 0;
  double threshold_db = tcn::kDefaultThresholdDb;
  std::vector<tcn::TemporalWindow> windows;
  Split split;
  std::shared_ptr<const model::PreparedData> data;
};

/// With a `scaler`, features use it instead of statistics fitted here
/// (e.g. the scaler saved with a trained model).
Experiment prepare_experiment(const tcn::Dataset& dataset, std::size_t window, const SplitConfig& split,
                              double threshold_db = tcn::kDefaultThresholdDb,
                              const model::FeatureScaler* scaler = nullptr);

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0;  // mean over the epoch's balanced training pairs
  double val_loss = 0;    // mean over all validation pairs
};

struct TrainResult {
  std::vector<EpochRecord> curve;
  std::vector<double> batch_losses;
  std::size_t best_epoch = 0;  // 0: initial weights were never beaten
  double best_val_loss = 0;
  bool stopped_early = false;
};

/// Mini-batch training with per-batch class balancing (redrawn every
/// epoch), BCE loss and early stopping on validation loss; the weights of
/// the best validation epoch are restored at the end. Throws NumericError
/// with epoch and batch coordinates on a non-finite forward or backward pass.
TrainResult train_model(model::LinkPredictor& model, const Experiment& experiment, const TrainConfig& config,
                        const std::function<void(const EpochRecord&)>& on_epoch = {});

struct ScoredPairs {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
};

/// Evaluation-mode scores for every ordered pair of the given windows.
ScoredPairs score_windows(const model::LinkPredictor& model, const Experiment& experiment,
                          std::span<const std::size_t> windows);

/// Mean BCE over every ordered pair of the given windows (no balancing).
double mean_loss(const model::LinkPredictor& model, const Experiment& experiment,
                 std::span<const std::size_t> windows);

MetricsReport evaluate(const model::LinkPredictor& model, const Experiment& experiment,
                       std::span<const std::size_t> windows, double threshold);

}  // namespace stged::train
