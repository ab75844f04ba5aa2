#include "stged/tcn/types.hpp"

#include <cmath>
#include <string>

#include "stged/core/errors.hpp"

namespace stged::tcn {

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.n_nodes != b.n_nodes || a.step_seconds != b.step_seconds || a.provenance != b.provenance ||
      a.snapshots.size() != b.snapshots.size())
    return false;
  for (std::size_t i = 0; i < a.snapshots.size(); ++i)
    if (!(*a.snapshots[i] == *b.snapshots[i])) return false;
  return true;
}

void validate(const Snapshot& s, double v_max) {
  const std::string where = "snapshot t=" + std::to_string(s.t) + ": ";
  const std::size_t n = s.nodes.size();
  std::vector<bool> seen(n, false);
  for (const auto& node : s.nodes) {
    if (node.id >= n) throw ContractError(where + "node id " + std::to_string(node.id) + " outside [0, N)");
    if (seen[node.id]) throw ContractError(where + "duplicate node id " + std::to_string(node.id));
    seen[node.id] = true;
    if (!std::isfinite(node.x) || !std::isfinite(node.y) || !std::isfinite(node.vx) || !std::isfinite(node.vy))
      throw ContractError(where + "non-finite kinematics for node " + std::to_string(node.id));
    // Small slack absorbs rounding in velocity components.
    if (std::hypot(node.vx, node.vy) > v_max * (1.0 + 1e-9))
      throw ContractError(where + "node " + std::to_string(node.id) + " exceeds v_max");
  }
  for (const auto& e : s.edges) {
    const std::string tag = "edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) + " ";
    if (e.src >= n || e.dst >= n) throw ContractError(where + tag + "references unknown node");
    if (e.src == e.dst) throw ContractError(where + tag + "is a self loop");
    if (!(e.distance_m >= 0.0)) throw ContractError(where + tag + "has negative distance");
    if (!(e.path_loss_db >= 0.0)) throw ContractError(where + tag + "has negative path loss");
    if (!(e.prop_delay_s >= 0.0)) throw ContractError(where + tag + "has negative propagation delay");
    if (!(e.timestamp_s >= 0.0 && e.timestamp_s < kStepSeconds))
      throw ContractError(where + tag + "timestamp outside the step");
  }
}

void validate(const Dataset& d, double v_max) {
  for (std::size_t i = 0; i < d.snapshots.size(); ++i) {
    const Snapshot& s = *d.snapshots[i];
    validate(s, v_max);
    if (s.node_count() != d.n_nodes)
      throw ContractError("snapshot t=" + std::to_string(s.t) + ": " + std::to_string(s.node_count()) +
                          " nodes, dataset declares " + std::to_string(d.n_nodes));
    if (i > 0 && s.t != d.snapshots[i - 1]->t + 1)
      throw ContractError("snapshot t=" + std::to_string(s.t) + " does not follow t=" +
                          std::to_string(d.snapshots[i - 1]->t));
  }
}

}  // namespace stged::tcn
