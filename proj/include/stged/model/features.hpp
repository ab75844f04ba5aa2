#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "stged/diff/ops.hpp"
#include "stged/diff/tensor.hpp"
#include "stged/tcn/types.hpp"

namespace stged::model {

inline constexpr std::size_t kNodeFeatures = 2;  // vx, vy
inline constexpr std::size_t kEdgeFeatures = 4;  // distance, path loss, delay, offset within step
/// Per-step pair vector of the non-graph baselines: sender node, receiver
/// node, mean edge features of the pair, presence flag.
inline constexpr std::size_t kPairStepFeatures = 2 * kNodeFeatures + kEdgeFeatures + 1;

struct NodePair {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  friend bool operator==(const NodePair&, const NodePair&) = default;
};

/// All ordered pairs (i, j), i != j, in row-major order.
std::vector<NodePair> all_pairs(std::size_t n);
/// Position of (i, j) in all_pairs(n).
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * (n - 1) + (j < i ? j : j - 1);
}

/// Per-feature z-score. Fitted on training snapshots only; the identity
/// scaler (mean 0, std 1) leaves raw values unchanged.
struct FeatureScaler {
  std::array<double, kNodeFeatures> node_mean{0.0, 0.0};
  std::array<double, kNodeFeatures> node_std{1.0, 1.0};
  std::array<double, kEdgeFeatures> edge_mean{0.0, 0.0, 0.0, 0.0};
  std::array<double, kEdgeFeatures> edge_std{1.0, 1.0, 1.0, 1.0};

  /// Features with zero spread keep std 1.
  static FeatureScaler fit(std::span<const tcn::SnapshotPtr> snapshots);

  friend bool operator==(const FeatureScaler&, const FeatureScaler&) = default;
};

/// Model-ready view of one snapshot. `edge_feats` is empty when there are no edges.
struct GraphTensors {
  std::size_t n_nodes = 0;
  diff::Tensor node_feats;  // N x kNodeFeatures
  diff::Tensor edge_feats;  // M x kEdgeFeatures
  diff::Index src;
  diff::Index dst;

  std::size_t edge_count() const noexcept { return src.size(); }
};

GraphTensors prepare_graph(const tcn::Snapshot& snapshot, const FeatureScaler& scaler);

/// kPairStepFeatures columns per requested pair. Multiple records of a pair
/// are averaged; a pair without records gets zero edge features and flag 0.
diff::Tensor pair_step_features(const tcn::Snapshot& snapshot, const FeatureScaler& scaler,
                                std::span<const NodePair> pairs);

/// Prepared tensors for every snapshot of a dataset, shared by all windows.
class PreparedData {
public:
  PreparedData(std::span<const tcn::SnapshotPtr> snapshots, FeatureScaler scaler);

  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t size() const noexcept { return graphs_.size(); }
  const FeatureScaler& scaler() const noexcept { return scaler_; }
  const GraphTensors& graph(std::size_t snapshot) const { return graphs_.at(snapshot); }
  /// Pair features of all_pairs(n) for one snapshot.
  const diff::Tensor& pair_features(std::size_t snapshot) const { return pair_feats_.at(snapshot); }

private:
  std::size_t n_nodes_ = 0;
  FeatureScaler scaler_;
  std::vector<GraphTensors> graphs_;
  std::vector<diff::Tensor> pair_feats_;
};

}  // namespace stged::model
