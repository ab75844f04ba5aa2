#pragma once

#include <cstdint>
#include <span>

namespace stged::train {

struct ConfusionCounts {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  void add(bool predicted, bool actual);
  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Metrics derived from a confusion matrix. A metric whose denominator is
/// zero is reported as 0 and flagged undefined.
struct MetricsReport {
  ConfusionCounts counts;
  double accuracy = 0, precision = 0, recall = 0, f1 = 0;
  bool accuracy_undefined = false, precision_undefined = false, recall_undefined = false, f1_undefined = false;

  static MetricsReport from_counts(const ConfusionCounts& counts);
  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Metrics of scores against 0/1 labels under the strict rule score > threshold.
MetricsReport score_metrics(std::span<const double> scores, std::span<const std::uint8_t> labels, double threshold);

}  // namespace stged::train
