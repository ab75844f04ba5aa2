#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "stged/core/provenance.hpp"

namespace stged::tcn {

inline constexpr double kStepSeconds = 1.0;
inline constexpr double kDefaultThresholdDb = 128.0;

using NodeId = std::uint32_t;

struct NodeState {
  NodeId id = 0;
  double x = 0.0;  // meters
  double y = 0.0;
  double vx = 0.0;  // meters / second
  double vy = 0.0;
  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// One message observed from src to dst during a step. `timestamp_s` is the
/// offset within the step, in [0, kStepSeconds).
struct EdgeRecord {
  NodeId src = 0;
  NodeId dst = 0;
  double distance_m = 0.0;
  double path_loss_db = 0.0;
  double prop_delay_s = 0.0;
  double timestamp_s = 0.0;
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Network state during step t. Several records per (src, dst) are allowed.
struct Snapshot {
  std::int64_t t = 0;
  std::vector<NodeState> nodes;
  std::vector<EdgeRecord> edges;

  std::size_t node_count() const noexcept { return nodes.size(); }
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

using SnapshotPtr = std::shared_ptr<const Snapshot>;

struct Dataset {
  std::size_t n_nodes = 0;
  double step_seconds = kStepSeconds;
  Provenance provenance;
  std::vector<SnapshotPtr> snapshots;

  std::size_t size() const noexcept { return snapshots.size(); }
};

bool operator==(const Dataset& a, const Dataset& b);

/// Throws ContractError describing the first violated snapshot invariant:
/// ids unique and contiguous in [0, N), speed <= v_max, edge endpoints valid,
/// src != dst, non-negative distance and path loss, timestamp within the step.
void validate(const Snapshot& snapshot, double v_max = std::numeric_limits<double>::infinity());

/// validate() on every snapshot plus consecutive step indices and constant N.
void validate(const Dataset& dataset, double v_max = std::numeric_limits<double>::infinity());

/// Dense n x n matrix, row-major.
template <typename T>
class SquareMatrix {
public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), cells_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }
  T operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  const std::vector<T>& cells() const noexcept { return cells_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<T> cells_;
};

/// Directed 0/1 link matrix; entry (i, j) refers to the link i -> j.
using ConnectivityMatrix = SquareMatrix<std::uint8_t>;
using HopMatrix = SquareMatrix<std::uint32_t>;

}  // namespace stged::tcn
