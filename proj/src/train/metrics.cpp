#include "stged/train/metrics.hpp"

#include "stged/core/errors.hpp"
#include "stged/model/layers.hpp"

namespace stged::train {

void ConfusionCounts::add(bool predicted, bool actual) {
  if (predicted)
    ++(actual ? tp : fp);
  else
    ++(actual ? fn : tn);
}

MetricsReport MetricsReport::from_counts(const ConfusionCounts& c) {
  MetricsReport m;
  m.counts = c;
  auto ratio = [](std::uint64_t num, std::uint64_t den, bool& undefined) {
    undefined = den == 0;
    return undefined ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  m.accuracy = ratio(c.tp + c.tn, c.total(), m.accuracy_undefined);
  m.precision = ratio(c.tp, c.tp + c.fp, m.precision_undefined);
  m.recall = ratio(c.tp, c.tp + c.fn, m.recall_undefined);
  // F1 = 2TP / (2TP + FP + FN), the harmonic mean written without the ratios.
  m.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn, m.f1_undefined);
  return m;
}

MetricsReport score_metrics(std::span<const double> scores, std::span<const std::uint8_t> labels, double threshold) {
  if (scores.size() != labels.size())
    throw ContractError("metrics: " + std::to_string(scores.size()) + " scores for " + std::to_string(labels.size()) +
                        " labels");
  ConfusionCounts c;
  for (std::size_t k = 0; k < scores.size(); ++k) c.add(model::decide(scores[k], threshold), labels[k] != 0);
  return MetricsReport::from_counts(c);
}

}  // namespace stged::train
