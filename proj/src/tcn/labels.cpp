#include "stged/tcn/labels.hpp"

#include <string>

#include "stged/core/errors.hpp"

namespace stged::tcn {

ConnectivityMatrix label_connectivity(const Snapshot& snapshot, double threshold_db) {
  if (!(threshold_db > 0.0)) throw DomainError("label_connectivity: threshold must be positive");
  const std::size_t n = snapshot.node_count();
  ConnectivityMatrix links(n, 0);
  for (const auto& e : snapshot.edges) {
    if (e.src >= n || e.dst >= n)
      throw ContractError("label_connectivity: edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) +
                          " references unknown node");
    if (e.src != e.dst && e.path_loss_db <= threshold_db) links(e.src, e.dst) = 1;
  }
  return links;
}

}  // namespace stged::tcn
