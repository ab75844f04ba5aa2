#include "stged/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stged/core/errors.hpp"
#include "stged/core/rng.hpp"
#include "stged/train/balance.hpp"

namespace stged::train {
namespace {

void check_model(const model::LinkPredictor& m, const Experiment& e) {
  if (m.config().window != e.window)
    throw ContractError("model window " + std::to_string(m.config().window) + " does not match experiment window " +
                        std::to_string(e.window));
  if (!e.data) throw ContractError("experiment has no prepared data");
}

/// Scores every pair of `group` (all from one window) on `tape`.
diff::Var score_group(const model::LinkPredictor& m, const Experiment& e, diff::Tape& tape,
                      std::span<const LabeledPair> group, model::DropoutSource* dropout) {
  std::vector<model::NodePair> pairs;
  pairs.reserve(group.size());
  for (const auto& p : group) pairs.push_back(p.pair);
  return m.score_pairs(tape, *e.data, e.windows[group.front().window].start, pairs, dropout);
}

std::string where(std::size_t epoch, std::size_t batch) {
  return "epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch);
}

}  // namespace

TrainConfig TrainConfig::paper() {
  TrainConfig c;
  c.learning_rate = 1e-6;
  c.epochs = 20;
  return c;
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw ConfigError("train: learning rate must be finite and non-negative");
  if (epochs == 0) throw ConfigError("train: epochs must be at least 1");
  if (batch_windows == 0) throw ConfigError("train: batch size must be at least 1 window");
}

Experiment prepare_experiment(const tcn::Dataset& dataset, std::size_t window, const SplitConfig& split,
                              double threshold_db, const model::FeatureScaler* scaler) {
  Experiment e;
  e.window = window;
  e.threshold_db = threshold_db;
  e.windows = tcn::build_windows(dataset.snapshots, window, threshold_db);
  e.split = split_windows(e.windows.size(), split);
  std::set<std::size_t> seen;
  std::vector<tcn::SnapshotPtr> train_snapshots;
  for (auto w : e.split.train)
    for (std::size_t s = 0; s < window; ++s)
      if (seen.insert(e.windows[w].start + s).second) train_snapshots.push_back(dataset.snapshots[e.windows[w].start + s]);
  e.data = std::make_shared<model::PreparedData>(dataset.snapshots,
                                                 scaler ? *scaler : model::FeatureScaler::fit(train_snapshots));
  return e;
}

TrainResult train_model(model::LinkPredictor& m, const Experiment& e, const TrainConfig& config,
                        const std::function<void(const EpochRecord&)>& on_epoch) {
  config.validate();
  check_model(m, e);
  if (e.split.train.empty()) throw ContractError("train: no training windows");

  Rng rng(config.seed);
  Rng order_rng = rng.fork();
  Rng balance_rng = rng.fork();
  model::DropoutSource dropout(m.config().dropout, rng.next_u64());
  Optimizer optimizer(config.optimizer, config.learning_rate);
  auto& params = m.parameters();

  TrainResult result;
  result.best_val_loss = mean_loss(m, e, e.split.val);
  auto best_weights = params.values();
  std::size_t stale = 0;

  std::vector<std::size_t> order = e.split.train;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    order_rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0;
    std::size_t pair_count = 0;
    for (std::size_t b = 0, batch = 1; b < order.size(); b += config.batch_windows, ++batch) {
      std::vector<LabeledPair> pool;
      for (std::size_t k = b; k < std::min(order.size(), b + config.batch_windows); ++k) {
        auto pairs = labeled_pairs(e.windows[order[k]].labels, order[k]);
        pool.insert(pool.end(), pairs.begin(), pairs.end());
      }
      auto chosen = balance(pool, balance_rng);
      // One forward pass per window; the pair order inside a window is the shuffled order.
      std::stable_sort(chosen.begin(), chosen.end(),
                       [](const LabeledPair& a, const LabeledPair& b) { return a.window < b.window; });

      params.zero_grad();
      double loss_value = 0;
      try {
        diff::Tape tape;
        std::vector<diff::Var> scores;
        diff::Tensor targets = diff::Tensor::matrix(chosen.size(), 1);
        for (std::size_t lo = 0; lo < chosen.size();) {
          std::size_t hi = lo;
          while (hi < chosen.size() && chosen[hi].window == chosen[lo].window) {
            targets.at(hi, 0) = chosen[hi].label;
            ++hi;
          }
          scores.push_back(score_group(m, e, tape, std::span(chosen).subspan(lo, hi - lo), &dropout));
          lo = hi;
        }
        diff::Var loss = diff::bce(scores.size() == 1 ? scores.front() : diff::concat_rows(scores), targets);
        loss_value = loss.value()[0];
        tape.backward(loss);
        for (const auto& p : params)
          if (!p->grad.all_finite()) throw NumericError("non-finite gradient in " + p->name);
      } catch (const NumericError& err) {
        throw NumericError("training diverged at " + where(epoch, batch) + ": " + err.what());
      }
      optimizer.step(params);
      for (const auto& p : params)
        if (!p->value.all_finite()) throw NumericError("non-finite weight " + p->name + " after " + where(epoch, batch));
      result.batch_losses.push_back(loss_value);
      loss_sum += loss_value * static_cast<double>(chosen.size());
      pair_count += chosen.size();
    }

    EpochRecord rec{epoch, loss_sum / static_cast<double>(pair_count), mean_loss(m, e, e.split.val)};
    result.curve.push_back(rec);
    if (on_epoch) on_epoch(rec);
    if (rec.val_loss < result.best_val_loss) {
      result.best_val_loss = rec.val_loss;
      result.best_epoch = epoch;
      best_weights = params.values();
      stale = 0;
    } else if (config.patience > 0 && ++stale >= config.patience) {
      result.stopped_early = true;
      break;
    }
  }
  params.assign(best_weights);
  return result;
}

ScoredPairs score_windows(const model::LinkPredictor& m, const Experiment& e, std::span<const std::size_t> windows) {
  check_model(m, e);
  ScoredPairs out;
  for (auto w : windows) {
    const auto pairs = labeled_pairs(e.windows.at(w).labels, w);
    std::vector<model::NodePair> nodes;
    for (const auto& p : pairs) {
      nodes.push_back(p.pair);
      out.labels.push_back(p.label);
    }
    const auto scores = m.predict(*e.data, e.windows[w].start, nodes);
    out.scores.insert(out.scores.end(), scores.begin(), scores.end());
  }
  return out;
}

double mean_loss(const model::LinkPredictor& m, const Experiment& e, std::span<const std::size_t> windows) {
  const auto scored = score_windows(m, e, windows);
  if (scored.scores.empty()) return 0.0;
  double sum = 0;
  for (std::size_t k = 0; k < scored.scores.size(); ++k) {
    const double s = std::clamp(scored.scores[k], 1e-12, 1.0 - 1e-12);
    sum -= scored.labels[k] ? std::log(s) : std::log(1.0 - s);
  }
  return sum / static_cast<double>(scored.scores.size());
}

MetricsReport evaluate(const model::LinkPredictor& m, const Experiment& e, std::span<const std::size_t> windows,
                       double threshold) {
  const auto scored = score_windows(m, e, windows);
  return score_metrics(scored.scores, scored.labels, threshold);
}

}  // namespace stged::train
