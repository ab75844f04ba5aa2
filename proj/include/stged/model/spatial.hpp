#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "stged/model/config.hpp"
#include "stged/model/features.hpp"
#include "stged/model/layers.hpp"

namespace stged::model {

// Message passing runs along edge records src -> dst: node i aggregates over
// its in-neighbourhood, one term per record. Every weight matrix holds all
// heads side by side (head k owns columns [k d, (k+1) d), d = out / heads).

/// Graph transformer convolution, per head:
///   x'_i = W1 x_i + sum_j a_ij (W2 x_j + W3 e_ij)
///   a_ij = softmax_j((W4 x_i) . (W5 x_j + W6 e_ij) / sqrt(d))
struct GtcWeights {
  diff::Parameter *w1, *w2, *w3, *w4, *w5, *w6;
  std::size_t heads = 1;

  static GtcWeights create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out,
                           std::size_t heads, Rng& rng);
};

/// Layer output plus attention coefficients (edges x heads; invalid when the
/// graph has no edges).
struct AttentionOutput {
  Var out;
  Var alpha;
};

AttentionOutput gtc_layer(Var x, const GraphTensors& g, const GtcWeights& w);

/// Additive attention: a_ij = softmax_j(leaky_relu(a_dst.Wx_i + a_src.Wx_j + a_e.W_e e_ij, 0.2)),
/// x'_i = W_root x_i + sum_j a_ij W x_j.
struct GatWeights {
  diff::Parameter *w, *root, *a_src, *a_dst;
  diff::Parameter *we = nullptr, *a_edge = nullptr;  // absent without edge features
  std::size_t heads = 1;

  static GatWeights create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out,
                           std::size_t heads, bool edge_features, Rng& rng);
};

AttentionOutput gat_layer(Var x, const GraphTensors& g, const GatWeights& w);

/// Dynamic attention: a_ij = softmax_j(a . leaky_relu(W_l x_j + W_r x_i + W_e e_ij, 0.2)),
/// x'_i = W_root x_i + sum_j a_ij W_l x_j.
struct Gatv2Weights {
  diff::Parameter *wl, *wr, *a, *root;
  diff::Parameter* we = nullptr;
  std::size_t heads = 1;

  static Gatv2Weights create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out,
                             std::size_t heads, bool edge_features, Rng& rng);
};

AttentionOutput gatv2_layer(Var x, const GraphTensors& g, const Gatv2Weights& w);

/// Edge-conditioned filter with mean aggregation:
///   x'_i = W_root x_i + mean_j x_j (F_0 + sum_k e_ij,k F_k)
struct GcnWeights {
  diff::Parameter* root;
  std::vector<diff::Parameter*> filters;  // F_0, then one per edge feature

  static GcnWeights create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out,
                           Rng& rng);
};

Var gcn_layer(Var x, const GraphTensors& g, const GcnWeights& w);

/// Stack of spatial layers of one kind. Each layer is followed by an output
/// projection (GTC: dense map mixing the concatenated heads; others: bias),
/// leaky ReLU and dropout.
class SpatialEncoder {
public:
  SpatialEncoder() = default;
  SpatialEncoder(diff::ParameterStore& store, const ModelConfig& config, std::size_t in, Rng& rng);

  SpatialKind kind() const noexcept { return kind_; }
  std::size_t output_size() const noexcept { return out_; }

  /// x: N x in node features of one snapshot.
  Var forward(Var x, const GraphTensors& g, DropoutSource* dropout) const;

private:
  using LayerWeights = std::variant<GtcWeights, GatWeights, Gatv2Weights, GcnWeights>;
  struct Layer {
    LayerWeights weights;
    Dense projection;            // GTC only
    diff::Parameter* bias = nullptr;  // others
  };

  SpatialKind kind_ = SpatialKind::none;
  std::size_t out_ = 0;
  std::vector<Layer> layers_;
};

}  // namespace stged::model
