#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "stged/core/rng.hpp"
#include "stged/diff/tensor.hpp"
#include "stged/tcn/types.hpp"
#include "stged/train/metrics.hpp"

namespace stged::testing {

inline diff::Tensor random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0, double hi = 1.0) {
  diff::Tensor t = diff::Tensor::matrix(rows, cols);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = rng.uniform(lo, hi);
  return t;
}

inline tcn::NodeState node(tcn::NodeId id, double x = 0, double y = 0, double vx = 0, double vy = 0) {
  return {id, x, y, vx, vy};
}

inline tcn::EdgeRecord record(tcn::NodeId src, tcn::NodeId dst, double loss_db, double distance = 100.0,
                              double timestamp = 0.5) {
  return {src, dst, distance, loss_db, distance / 2.998e8, timestamp};
}

/// Snapshot with `n` nodes at rest and the given records.
inline tcn::Snapshot snapshot(std::size_t n, std::vector<tcn::EdgeRecord> edges, std::int64_t t = 0) {
  tcn::Snapshot s;
  s.t = t;
  for (std::size_t i = 0; i < n; ++i) s.nodes.push_back(node(static_cast<tcn::NodeId>(i), 10.0 * i, 0));
  s.edges = std::move(edges);
  return s;
}

/// Random directed graph as a snapshot: each ordered pair gets a record
/// below the 128 dB label threshold with probability p (others get one above it
/// with probability p as well, so they are present but unlabelled).
inline tcn::Snapshot random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<tcn::EdgeRecord> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto a = static_cast<tcn::NodeId>(i), b = static_cast<tcn::NodeId>(j);
      if (rng.uniform() < p) edges.push_back(record(a, b, rng.uniform(60.0, 128.0)));
      if (rng.uniform() < p) edges.push_back(record(a, b, rng.uniform(128.5, 140.0)));
    }
  return snapshot(n, std::move(edges));
}

/// All-pairs shortest paths by Floyd-Warshall on the thresholded link graph,
/// reported with the hop-count conventions (unreachable and diagonal: 0).
inline std::vector<std::vector<std::uint32_t>> floyd_warshall_hops(const tcn::Snapshot& s, double threshold_db) {
  const std::size_t n = s.nodes.size();
  constexpr std::uint64_t inf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : s.edges)
    if (e.path_loss_db <= threshold_db && e.src != e.dst) d[e.src][e.dst] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  std::vector<std::vector<std::uint32_t>> out(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d[i][j] != inf) out[i][j] = static_cast<std::uint32_t>(d[i][j]);
  return out;
}

/// Confusion counts recomputed element by element from raw scores.
inline train::ConfusionCounts brute_confusion(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels,
                                              double threshold) {
  train::ConfusionCounts c;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const bool p = scores[k] > threshold;
    const bool a = labels[k] == 1;
    if (p && a) ++c.tp;
    if (p && !a) ++c.fp;
    if (!p && a) ++c.fn;
    if (!p && !a) ++c.tn;
  }
  return c;
}

}  // namespace stged::testing
