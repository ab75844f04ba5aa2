#include "stged/model/spatial.hpp"

#include <cmath>

#include "stged/core/errors.hpp"

namespace stged::model {
namespace {

using diff::Index;
using diff::Tensor;

constexpr double kAttentionSlope = 0.2;

void check_heads(const char* layer, std::size_t width, std::size_t heads) {
  if (heads == 0 || width % heads != 0)
    throw ContractError(std::string(layer) + ": width " + std::to_string(width) + " not divisible by " +
                        std::to_string(heads) + " heads");
}

void check_graph(const char* layer, Var x, const GraphTensors& g) {
  if (x.rows() != g.n_nodes)
    throw ContractError(std::string(layer) + ": " + std::to_string(x.rows()) + " feature rows for " +
                        std::to_string(g.n_nodes) + " nodes");
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (g.src[e] >= g.n_nodes || g.dst[e] >= g.n_nodes)
      throw ContractError(std::string(layer) + ": edge " + std::to_string(e) + " references an unknown node");
}

Var param(Var like, diff::Parameter* p) { return like.tape().param(*p); }

/// Softmax of per-head logits (edges x heads) over each destination's
/// in-edges, then the per-edge messages (edges x width) weighted by their
/// head's coefficient and summed per destination.
AttentionOutput attend(Var logits, Var messages, const GraphTensors& g) {
  Var alpha = diff::segment_softmax(logits, g.dst, g.n_nodes);
  return {diff::scatter_add_rows(diff::head_scale(messages, alpha), g.dst, g.n_nodes), alpha};
}

/// Per-head dot products of matching rows.
Var head_dot(Var a, Var b, std::size_t heads) { return diff::head_sum(a * b, heads); }

/// Per-head dot product of every row with a 1 x width vector.
Var head_project(Var a, Var v, std::size_t heads) { return diff::head_sum(diff::mul_row(a, v), heads); }

}  // namespace

GtcWeights GtcWeights::create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out,
                              std::size_t heads, Rng& rng) {
  check_heads("gtc", out, heads);
  GtcWeights w{};
  w.w1 = &store.add_glorot(name + ".w1", in, out, rng);
  w.w2 = &store.add_glorot(name + ".w2", in, out, rng);
  w.w3 = &store.add_glorot(name + ".w3", kEdgeFeatures, out, rng);
  w.w4 = &store.add_glorot(name + ".w4", in, out, rng);
  w.w5 = &store.add_glorot(name + ".w5", in, out, rng);
  w.w6 = &store.add_glorot(name + ".w6", kEdgeFeatures, out, rng);
  w.heads = heads;
  return w;
}

AttentionOutput gtc_layer(Var x, const GraphTensors& g, const GtcWeights& w) {
  check_graph("gtc", x, g);
  const std::size_t width = w.w1->value.cols();
  check_heads("gtc", width, w.heads);
  Var self = diff::matmul(x, param(x, w.w1));
  if (g.edge_count() == 0) return {self, Var{}};

  auto& tape = x.tape();
  Var e = tape.constant(g.edge_feats);
  Var query = diff::gather_rows(diff::matmul(x, param(x, w.w4)), g.dst);
  Var key = diff::gather_rows(diff::matmul(x, param(x, w.w5)), g.src) + diff::matmul(e, param(x, w.w6));
  Var value = diff::gather_rows(diff::matmul(x, param(x, w.w2)), g.src) + diff::matmul(e, param(x, w.w3));
  const double d = static_cast<double>(width / w.heads);
  Var logits = diff::scale(head_dot(query, key, w.heads), 1.0 / std::sqrt(d));
  auto [agg, alpha] = attend(logits, value, g);
  return {self + agg, alpha};
}

GatWeights GatWeights::create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out,
                              std::size_t heads, bool edge_features, Rng& rng) {
  check_heads("gat", out, heads);
  GatWeights w{};
  w.w = &store.add_glorot(name + ".w", in, out, rng);
  w.root = &store.add_glorot(name + ".root", in, out, rng);
  w.a_src = &store.add_glorot(name + ".a_src", 1, out, rng);
  w.a_dst = &store.add_glorot(name + ".a_dst", 1, out, rng);
  if (edge_features) {
    w.we = &store.add_glorot(name + ".we", kEdgeFeatures, out, rng);
    w.a_edge = &store.add_glorot(name + ".a_edge", 1, out, rng);
  }
  w.heads = heads;
  return w;
}

AttentionOutput gat_layer(Var x, const GraphTensors& g, const GatWeights& w) {
  check_graph("gat", x, g);
  Var self = diff::matmul(x, param(x, w.root));
  if (g.edge_count() == 0) return {self, Var{}};

  Var wx = diff::matmul(x, param(x, w.w));
  Var wx_src = diff::gather_rows(wx, g.src);
  Var score = head_project(diff::gather_rows(wx, g.dst), param(x, w.a_dst), w.heads) +
              head_project(wx_src, param(x, w.a_src), w.heads);
  if (w.we != nullptr) {
    Var we = diff::matmul(x.tape().constant(g.edge_feats), param(x, w.we));
    score = score + head_project(we, param(x, w.a_edge), w.heads);
  }
  auto [agg, alpha] = attend(diff::leaky_relu(score, kAttentionSlope), wx_src, g);
  return {self + agg, alpha};
}

Gatv2Weights Gatv2Weights::create(diff::ParameterStore& store, const std::string& name, std::size_t in,
                                  std::size_t out, std::size_t heads, bool edge_features, Rng& rng) {
  check_heads("gatv2", out, heads);
  Gatv2Weights w{};
  w.wl = &store.add_glorot(name + ".wl", in, out, rng);
  w.wr = &store.add_glorot(name + ".wr", in, out, rng);
  w.a = &store.add_glorot(name + ".a", 1, out, rng);
  w.root = &store.add_glorot(name + ".root", in, out, rng);
  if (edge_features) w.we = &store.add_glorot(name + ".we", kEdgeFeatures, out, rng);
  w.heads = heads;
  return w;
}

AttentionOutput gatv2_layer(Var x, const GraphTensors& g, const Gatv2Weights& w) {
  check_graph("gatv2", x, g);
  Var self = diff::matmul(x, param(x, w.root));
  if (g.edge_count() == 0) return {self, Var{}};

  Var left = diff::gather_rows(diff::matmul(x, param(x, w.wl)), g.src);
  Var hidden = left + diff::gather_rows(diff::matmul(x, param(x, w.wr)), g.dst);
  if (w.we != nullptr) hidden = hidden + diff::matmul(x.tape().constant(g.edge_feats), param(x, w.we));
  Var score = head_project(diff::leaky_relu(hidden, kAttentionSlope), param(x, w.a), w.heads);
  auto [agg, alpha] = attend(score, left, g);
  return {self + agg, alpha};
}

GcnWeights GcnWeights::create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out,
                              Rng& rng) {
  GcnWeights w{};
  w.root = &store.add_glorot(name + ".root", in, out, rng);
  for (std::size_t k = 0; k <= kEdgeFeatures; ++k)
    w.filters.push_back(&store.add_glorot(name + ".f" + std::to_string(k), in, out, rng));
  return w;
}

Var gcn_layer(Var x, const GraphTensors& g, const GcnWeights& w) {
  check_graph("gcn", x, g);
  Var self = diff::matmul(x, param(x, w.root));
  const std::size_t m = g.edge_count();
  if (m == 0) return self;

  auto& tape = x.tape();
  Var msg = diff::gather_rows(diff::matmul(x, param(x, w.filters[0])), g.src);
  for (std::size_t k = 0; k < kEdgeFeatures; ++k) {
    Tensor column = Tensor::matrix(m, 1);
    for (std::size_t r = 0; r < m; ++r) column.at(r, 0) = g.edge_feats.at(r, k);
    Var filtered = diff::gather_rows(diff::matmul(x, param(x, w.filters[k + 1])), g.src);
    msg = msg + diff::scale_rows(filtered, tape.constant(std::move(column)));
  }
  Tensor inv_degree = Tensor::matrix(g.n_nodes, 1);
  for (auto d : g.dst) inv_degree.at(d, 0) += 1.0;
  for (auto& v : inv_degree.data()) v = v > 0.0 ? 1.0 / v : 0.0;
  Var mean = diff::scale_rows(diff::scatter_add_rows(msg, g.dst, g.n_nodes), tape.constant(std::move(inv_degree)));
  return self + mean;
}

SpatialEncoder::SpatialEncoder(diff::ParameterStore& store, const ModelConfig& config, std::size_t in, Rng& rng)
    : kind_(config.spatial), out_(config.spatial_hidden) {
  std::size_t width = in;
  for (std::size_t l = 0; l < config.spatial_layers; ++l) {
    const std::string name = "spatial." + std::to_string(l);
    Layer layer{GcnWeights{}, Dense{}, nullptr};
    switch (kind_) {
      case SpatialKind::gtc:
        layer.weights = GtcWeights::create(store, name + ".gtc", width, out_, config.attention_heads, rng);
        layer.projection = Dense::create(store, name + ".proj", out_, out_, rng);
        break;
      case SpatialKind::gat:
        layer.weights =
            GatWeights::create(store, name + ".gat", width, out_, config.attention_heads, config.gat_edge_features, rng);
        break;
      case SpatialKind::gatv2:
        layer.weights = Gatv2Weights::create(store, name + ".gatv2", width, out_, config.attention_heads,
                                             config.gat_edge_features, rng);
        break;
      case SpatialKind::gcn:
        layer.weights = GcnWeights::create(store, name + ".gcn", width, out_, rng);
        break;
      case SpatialKind::none:
        throw ConfigError("spatial encoder: kind 'none' has no layers");
    }
    if (kind_ != SpatialKind::gtc) layer.bias = &store.add_zeros(name + ".bias", 1, out_);
    layers_.push_back(std::move(layer));
    width = out_;
  }
}

Var SpatialEncoder::forward(Var x, const GraphTensors& g, DropoutSource* dropout) const {
  for (const auto& layer : layers_) {
    Var h;
    if (const auto* w = std::get_if<GtcWeights>(&layer.weights)) {
      h = layer.projection(gtc_layer(x, g, *w).out);
    } else {
      if (const auto* gat = std::get_if<GatWeights>(&layer.weights)) {
        h = gat_layer(x, g, *gat).out;
      } else if (const auto* v2 = std::get_if<Gatv2Weights>(&layer.weights)) {
        h = gatv2_layer(x, g, *v2).out;
      } else {
        h = gcn_layer(x, g, std::get<GcnWeights>(layer.weights));
      }
      h = diff::add_row(h, x.tape().param(*layer.bias));
    }
    x = apply_dropout(diff::leaky_relu(h), dropout);
  }
  return x;
}

}  // namespace stged::model
