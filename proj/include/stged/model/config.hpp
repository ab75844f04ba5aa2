#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace stged::model {

enum class SpatialKind { none, gcn, gat, gatv2, gtc };
enum class TemporalKind { none, lstm, gru };
/// Non-graph pair models; `none` selects the graph encoder-decoder.
enum class BaselineKind { none, mlp, lstm, gru };

std::string to_string(SpatialKind k);
std::string to_string(TemporalKind k);
std::string to_string(BaselineKind k);
SpatialKind parse_spatial(const std::string& s);
TemporalKind parse_temporal(const std::string& s);

struct ModelConfig {
  SpatialKind spatial = SpatialKind::gtc;
  TemporalKind temporal = TemporalKind::lstm;
  BaselineKind baseline = BaselineKind::none;

  std::size_t window = 5;
  std::size_t spatial_layers = 2;
  std::size_t spatial_hidden = 64;
  std::size_t attention_heads = 4;
  std::size_t embedding_size = 64;  // width of the top recurrent layer, i.e. of Z
  std::size_t temporal_layers = 2;
  std::size_t temporal_hidden = 128;  // width of the lower recurrent layers
  std::vector<std::size_t> mlp_hidden{64};
  double dropout = 0.2;
  double threshold = 0.5;
  bool gat_edge_features = true;  // edge features inside GAT / GATv2 scores

  /// Desk-scale widths (runs on one CPU core).
  static ModelConfig desk();
  /// Widths used for the published experiments.
  static ModelConfig paper();

  /// Throws ConfigError on the first violated invariant.
  void validate() const;

  /// "mlp", "lstm", "gru", "gtc" (spatial only), "gtc-lstm", "none-gru", ...
  std::string name() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Applies a model name to a width preset. Accepts the forms produced by
/// ModelConfig::name() plus "stged" for gtc-lstm. Throws ConfigError.
ModelConfig with_model_name(ModelConfig base, const std::string& name);

}  // namespace stged::model
