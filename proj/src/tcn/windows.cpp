#include "stged/tcn/windows.hpp"

#include <string>

#include "stged/core/errors.hpp"
#include "stged/tcn/labels.hpp"

namespace stged::tcn {

std::vector<TemporalWindow> build_windows(std::span<const SnapshotPtr> snapshots, std::size_t w,
                                          double threshold_db) {
  if (w == 0) throw ContractError("build_windows: window size must be positive");
  if (snapshots.size() <= w)
    throw ContractError("build_windows: window size " + std::to_string(w) + " needs at least " +
                        std::to_string(w + 1) + " snapshots, got " + std::to_string(snapshots.size()));
  for (std::size_t i = 1; i < snapshots.size(); ++i)
    if (snapshots[i]->t != snapshots[i - 1]->t + 1)
      throw ContractError("build_windows: step " + std::to_string(snapshots[i]->t) + " does not follow " +
                          std::to_string(snapshots[i - 1]->t));

  std::vector<TemporalWindow> windows;
  windows.reserve(snapshots.size() - w);
  for (std::size_t start = 0; start + w < snapshots.size(); ++start) {
    TemporalWindow win;
    win.start = start;
    win.snapshots.assign(snapshots.begin() + start, snapshots.begin() + start + w);
    const Snapshot& next = *snapshots[start + w];
    win.labels = label_connectivity(next, threshold_db);
    win.t_target = next.t;
    windows.push_back(std::move(win));
  }
  return windows;
}

}  // namespace stged::tcn
