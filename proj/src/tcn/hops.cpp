#include <deque>

#include "stged/tcn/labels.hpp"

namespace stged::tcn {

HopMatrix hop_counts(const ConnectivityMatrix& links) {
  const std::size_t n = links.size();
  HopMatrix hops(n, 0);
  std::vector<std::uint32_t> dist(n);
  std::deque<std::size_t> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    dist.assign(n, 0);
    frontier.assign(1, s);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (!links(u, v) || v == s || dist[v] != 0) continue;
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
    for (std::size_t v = 0; v < n; ++v) hops(s, v) = dist[v];
  }
  return hops;
}

HopMatrix hop_counts(const Snapshot& snapshot, double threshold_db) {
  return hop_counts(label_connectivity(snapshot, threshold_db));
}

}  // namespace stged::tcn
