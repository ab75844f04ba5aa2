#include "stged/model/diagnostics.hpp"

#include <memory>

#include "stged/model/layers.hpp"
#include "stged/model/predictor.hpp"
#include "stged/model/spatial.hpp"
#include "stged/sim/propagation.hpp"

namespace stged::model {
namespace {

using diff::Tape;
using diff::Tensor;
using diff::Var;

Tensor random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Tensor t = Tensor::matrix(rows, cols);
  for (auto& v : t.data()) v = rng.uniform(-1.0, 1.0);
  return t;
}

/// sum(tanh(v) * r): a generic scalar read-out of a matrix output.
Var readout(Var v, const Tensor& r) { return diff::sum(diff::tanh(v) * v.tape().constant(r)); }

Tensor random_labels(std::size_t rows, Rng& rng) {
  Tensor t = Tensor::matrix(rows, 1);
  for (std::size_t r = 0; r < rows; ++r) t.at(r, 0) = r % 2 == 0 ? 1.0 : static_cast<double>(rng.index(2));
  return t;
}

GradientCase run(const std::string& name, const diff::ScalarFunction& f, diff::ParameterStore& store, double eps,
                 std::size_t max_entries) {
  return {name, diff::grad_check(f, store, eps, max_entries), store.scalar_count()};
}

}  // namespace

tcn::Snapshot random_snapshot(std::size_t n, std::size_t edges, std::int64_t t, Rng& rng) {
  tcn::Snapshot s;
  s.t = t;
  for (std::size_t i = 0; i < n; ++i)
    s.nodes.push_back({static_cast<tcn::NodeId>(i), rng.uniform(0.0, 3000.0), rng.uniform(0.0, 3000.0),
                       rng.uniform(-7.0, 7.0), rng.uniform(-7.0, 7.0)});
  if (n < 2) return s;
  for (std::size_t e = 0; e < edges; ++e) {
    const auto src = static_cast<tcn::NodeId>(rng.index(n));
    auto dst = static_cast<tcn::NodeId>(rng.index(n - 1));
    if (dst >= src) ++dst;
    const double d = rng.uniform(10.0, 3000.0);
    s.edges.push_back({src, dst, d, sim::path_loss_db(d, sim::TwoRayParams{}), sim::propagation_delay_s(d),
                       rng.uniform()});
  }
  return s;
}

std::vector<GradientCase> gradient_suite(double eps, std::uint64_t seed, std::size_t max_entries) {
  Rng rng(seed);
  std::vector<GradientCase> cases;

  // Layer-level cases share one 3-node graph with a multi-edge.
  std::vector<tcn::SnapshotPtr> one{std::make_shared<tcn::Snapshot>(random_snapshot(3, 5, 0, rng))};
  const GraphTensors g = prepare_graph(*one.front(), FeatureScaler::fit(one));
  const std::size_t in = 3, out = 8, heads = 2;
  const Tensor x = random_matrix(g.n_nodes, in, rng);
  const Tensor r = random_matrix(g.n_nodes, out, rng);

  {
    diff::ParameterStore store;
    const auto w = GcnWeights::create(store, "gcn", in, out, rng);
    cases.push_back(run("gcn", [&](Tape& t) { return readout(gcn_layer(t.constant(x), g, w), r); }, store, eps, max_entries));
  }
  {
    diff::ParameterStore store;
    const auto w = GatWeights::create(store, "gat", in, out, heads, true, rng);
    cases.push_back(run("gat", [&](Tape& t) { return readout(gat_layer(t.constant(x), g, w).out, r); }, store, eps, max_entries));
  }
  {
    diff::ParameterStore store;
    const auto w = Gatv2Weights::create(store, "gatv2", in, out, heads, true, rng);
    cases.push_back(run("gatv2", [&](Tape& t) { return readout(gatv2_layer(t.constant(x), g, w).out, r); }, store, eps, max_entries));
  }
  {
    diff::ParameterStore store;
    const auto w = GtcWeights::create(store, "gtc", in, out, heads, rng);
    cases.push_back(run("gtc", [&](Tape& t) { return readout(gtc_layer(t.constant(x), g, w).out, r); }, store, eps, max_entries));
  }

  const std::size_t hidden = 5;
  const Tensor h0 = random_matrix(g.n_nodes, hidden, rng);
  const Tensor c0 = random_matrix(g.n_nodes, hidden, rng);
  const Tensor rh = random_matrix(g.n_nodes, hidden, rng);
  {
    diff::ParameterStore store;
    const auto w = LstmWeights::create(store, "lstm", in, hidden, rng);
    cases.push_back(run("lstm", [&](Tape& t) {
      auto [h, c] = lstm_step(t.constant(x), t.constant(h0), t.constant(c0), w);
      auto [h2, c2] = lstm_step(t.constant(x), h, c, w);
      return readout(h2, rh) + readout(c2, rh);
    }, store, eps, max_entries));
  }
  {
    diff::ParameterStore store;
    const auto w = GruWeights::create(store, "gru", in, hidden, rng);
    cases.push_back(run("gru", [&](Tape& t) {
      Var h = gru_step(t.constant(x), t.constant(h0), w);
      return readout(gru_step(t.constant(x), h, w), rh);
    }, store, eps, max_entries));
  }
  {
    diff::ParameterStore store;
    const Mlp decoder(store, "decoder", 2 * hidden, {6}, 1, rng);
    const diff::Index src{0, 0, 1, 1, 2, 2}, dst{1, 2, 0, 2, 0, 1};
    const Tensor labels = random_labels(src.size(), rng);
    cases.push_back(run("mlp-decoder", [&](Tape& t) {
      return diff::bce(decode_pairs(decoder, t.constant(h0), src, dst, nullptr), labels);
    }, store, eps, max_entries));
  }

  // Composed model at desk widths.
  {
    ModelConfig config = ModelConfig::desk();
    config.window = 2;
    StgedModel m(config, rng.next_u64());
    std::vector<tcn::SnapshotPtr> window;
    for (std::int64_t t = 0; t < 2; ++t) window.push_back(std::make_shared<tcn::Snapshot>(random_snapshot(3, 5, t, rng)));
    const PreparedData data(window, FeatureScaler::fit(window));
    const auto pairs = all_pairs(3);
    const Tensor labels = random_labels(pairs.size(), rng);
    cases.push_back(run("stged-micro", [&](Tape& t) {
      return diff::bce(m.score_pairs(t, data, 0, pairs, nullptr), labels);
    }, m.parameters(), eps, max_entries));
  }
  return cases;
}

}  // namespace stged::model
