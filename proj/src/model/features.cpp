#include "stged/model/features.hpp"

#include <cmath>

#include "stged/core/errors.hpp"

namespace stged::model {
namespace {

std::array<double, kEdgeFeatures> raw_edge(const tcn::EdgeRecord& e) {
  return {e.distance_m, e.path_loss_db, e.prop_delay_s, e.timestamp_s};
}

}  // namespace

std::vector<NodePair> all_pairs(std::size_t n) {
  std::vector<NodePair> pairs;
  pairs.reserve(n * (n > 0 ? n - 1 : 0));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (i != j) pairs.push_back({i, j});
  return pairs;
}

FeatureScaler FeatureScaler::fit(std::span<const tcn::SnapshotPtr> snapshots) {
  std::array<double, kNodeFeatures> ns{}, nss{};
  std::array<double, kEdgeFeatures> es{}, ess{};
  double nn = 0, ne = 0;
  for (const auto& s : snapshots) {
    for (const auto& n : s->nodes) {
      const double v[kNodeFeatures] = {n.vx, n.vy};
      for (std::size_t k = 0; k < kNodeFeatures; ++k) {
        ns[k] += v[k];
        nss[k] += v[k] * v[k];
      }
      nn += 1;
    }
    for (const auto& e : s->edges) {
      const auto v = raw_edge(e);
      for (std::size_t k = 0; k < kEdgeFeatures; ++k) {
        es[k] += v[k];
        ess[k] += v[k] * v[k];
      }
      ne += 1;
    }
  }
  FeatureScaler f;
  auto finish = [](double sum, double sumsq, double count, double& mean, double& sd) {
    if (count == 0) return;
    mean = sum / count;
    const double var = std::max(0.0, sumsq / count - mean * mean);
    // Relative floor guards against cancellation in the variance formula.
    sd = std::sqrt(var) > 1e-12 * std::max(1.0, std::abs(mean)) ? std::sqrt(var) : 1.0;
  };
  for (std::size_t k = 0; k < kNodeFeatures; ++k) finish(ns[k], nss[k], nn, f.node_mean[k], f.node_std[k]);
  for (std::size_t k = 0; k < kEdgeFeatures; ++k) finish(es[k], ess[k], ne, f.edge_mean[k], f.edge_std[k]);
  return f;
}

GraphTensors prepare_graph(const tcn::Snapshot& s, const FeatureScaler& f) {
  GraphTensors g;
  g.n_nodes = s.node_count();
  if (g.n_nodes == 0) throw ContractError("prepare_graph: snapshot has no nodes");
  g.node_feats = diff::Tensor::matrix(g.n_nodes, kNodeFeatures);
  for (const auto& n : s.nodes) {
    g.node_feats.at(n.id, 0) = (n.vx - f.node_mean[0]) / f.node_std[0];
    g.node_feats.at(n.id, 1) = (n.vy - f.node_mean[1]) / f.node_std[1];
  }
  if (!s.edges.empty()) {
    g.edge_feats = diff::Tensor::matrix(s.edges.size(), kEdgeFeatures);
    for (std::size_t r = 0; r < s.edges.size(); ++r) {
      const auto& e = s.edges[r];
      if (e.src >= g.n_nodes || e.dst >= g.n_nodes) throw ContractError("prepare_graph: edge references unknown node");
      const auto v = raw_edge(e);
      for (std::size_t k = 0; k < kEdgeFeatures; ++k) g.edge_feats.at(r, k) = (v[k] - f.edge_mean[k]) / f.edge_std[k];
      g.src.push_back(e.src);
      g.dst.push_back(e.dst);
    }
  }
  return g;
}

diff::Tensor pair_step_features(const tcn::Snapshot& s, const FeatureScaler& f, std::span<const NodePair> pairs) {
  const std::size_t n = s.node_count();
  // Mean normalised edge features per ordered pair.
  std::vector<double> sums(n * n * kEdgeFeatures, 0.0);
  std::vector<unsigned> counts(n * n, 0);
  for (const auto& e : s.edges) {
    const auto v = raw_edge(e);
    const std::size_t cell = e.src * n + e.dst;
    for (std::size_t k = 0; k < kEdgeFeatures; ++k) sums[cell * kEdgeFeatures + k] += (v[k] - f.edge_mean[k]) / f.edge_std[k];
    ++counts[cell];
  }
  diff::Tensor out = diff::Tensor::matrix(pairs.size(), kPairStepFeatures);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& a = s.nodes.at(pairs[p].src);
    const auto& b = s.nodes.at(pairs[p].dst);
    out.at(p, 0) = (a.vx - f.node_mean[0]) / f.node_std[0];
    out.at(p, 1) = (a.vy - f.node_mean[1]) / f.node_std[1];
    out.at(p, 2) = (b.vx - f.node_mean[0]) / f.node_std[0];
    out.at(p, 3) = (b.vy - f.node_mean[1]) / f.node_std[1];
    const std::size_t cell = pairs[p].src * n + pairs[p].dst;
    if (counts[cell] > 0) {
      for (std::size_t k = 0; k < kEdgeFeatures; ++k)
        out.at(p, 4 + k) = sums[cell * kEdgeFeatures + k] / static_cast<double>(counts[cell]);
      out.at(p, 4 + kEdgeFeatures) = 1.0;
    }
  }
  return out;
}

PreparedData::PreparedData(std::span<const tcn::SnapshotPtr> snapshots, FeatureScaler scaler)
    : scaler_(scaler) {
  if (snapshots.empty()) throw ContractError("prepared data: no snapshots");
  n_nodes_ = snapshots.front()->node_count();
  const auto pairs = all_pairs(n_nodes_);
  for (const auto& s : snapshots) {
    if (s->node_count() != n_nodes_)
      throw ContractError("prepared data: node count changes from " + std::to_string(n_nodes_) + " to " +
                          std::to_string(s->node_count()) + " at t=" + std::to_string(s->t));
    graphs_.push_back(prepare_graph(*s, scaler_));
    pair_feats_.push_back(pair_step_features(*s, scaler_, pairs));
  }
}

}  // namespace stged::model
