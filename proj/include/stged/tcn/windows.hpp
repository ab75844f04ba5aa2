#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stged/tcn/types.hpp"

namespace stged::tcn {

/// w consecutive snapshots and the connectivity of the step that follows.
struct TemporalWindow {
  std::size_t start = 0;  // position of the first snapshot in the source sequence
  std::vector<SnapshotPtr> snapshots;
  ConnectivityMatrix labels;
  std::int64_t t_target = 0;

  std::size_t length() const noexcept { return snapshots.size(); }
  const Snapshot& last() const { return *snapshots.back(); }
};

/// Sliding windows with stride 1: one per start index, size() - w in total.
/// Throws ContractError if there are not at least w + 1 snapshots or the
/// step indices are not consecutive.
std::vector<TemporalWindow> build_windows(std::span<const SnapshotPtr> snapshots, std::size_t w,
                                          double threshold_db = kDefaultThresholdDb);

}  // namespace stged::tcn
