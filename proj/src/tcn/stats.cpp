#include "stged/tcn/stats.hpp"

#include <cmath>

namespace stged::tcn {
namespace {

// Welford running moments.
struct Running {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  FeatureMoments moments() const {
    return {mean, n ? std::sqrt(m2 / static_cast<double>(n)) : 0.0};
  }
};

}  // namespace

DatasetStats compute_stats(const Dataset& d) {
  DatasetStats st;
  st.states = d.snapshots.size();
  std::array<Running, 2> node;
  std::array<Running, 4> edge;
  double nodes = 0.0, edges = 0.0;
  for (const auto& s : d.snapshots) {
    nodes += static_cast<double>(s->nodes.size());
    edges += static_cast<double>(s->edges.size());
    for (const auto& n : s->nodes) {
      node[0].push(n.vx);
      node[1].push(n.vy);
    }
    for (const auto& e : s->edges) {
      edge[0].push(e.distance_m);
      edge[1].push(e.path_loss_db);
      edge[2].push(e.prop_delay_s);
      edge[3].push(e.timestamp_s);
    }
  }
  if (st.states) {
    st.avg_nodes = nodes / static_cast<double>(st.states);
    st.avg_edges = edges / static_cast<double>(st.states);
  }
  for (std::size_t k = 0; k < 2; ++k) st.node[k] = node[k].moments();
  for (std::size_t k = 0; k < 4; ++k) st.edge[k] = edge[k].moments();
  return st;
}

}  // namespace stged::tcn
