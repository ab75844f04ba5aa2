#include "stged/model/config.hpp"

#include "stged/core/errors.hpp"

namespace stged::model {

std::string to_string(SpatialKind k) {
  switch (k) {
    case SpatialKind::none: return "none";
    case SpatialKind::gcn: return "gcn";
    case SpatialKind::gat: return "gat";
    case SpatialKind::gatv2: return "gatv2";
    case SpatialKind::gtc: return "gtc";
  }
  return "?";
}

std::string to_string(TemporalKind k) {
  switch (k) {
    case TemporalKind::none: return "none";
    case TemporalKind::lstm: return "lstm";
    case TemporalKind::gru: return "gru";
  }
  return "?";
}

std::string to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::none: return "none";
    case BaselineKind::mlp: return "mlp";
    case BaselineKind::lstm: return "lstm";
    case BaselineKind::gru: return "gru";
  }
  return "?";
}

SpatialKind parse_spatial(const std::string& s) {
  if (s == "none") return SpatialKind::none;
  if (s == "gcn") return SpatialKind::gcn;
  if (s == "gat") return SpatialKind::gat;
  if (s == "gatv2") return SpatialKind::gatv2;
  if (s == "gtc") return SpatialKind::gtc;
  throw ConfigError("unknown spatial encoder '" + s + "'");
}

TemporalKind parse_temporal(const std::string& s) {
  if (s == "none") return TemporalKind::none;
  if (s == "lstm") return TemporalKind::lstm;
  if (s == "gru") return TemporalKind::gru;
  throw ConfigError("unknown temporal encoder '" + s + "'");
}

ModelConfig ModelConfig::desk() { return ModelConfig{}; }

ModelConfig ModelConfig::paper() {
  ModelConfig c;
  c.spatial_hidden = 1024;
  c.attention_heads = 128;
  c.embedding_size = 1024;
  c.temporal_hidden = 2048;
  c.mlp_hidden = {1024};
  return c;
}

void ModelConfig::validate() const {
  if (window == 0) throw ConfigError("model: window must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("model: dropout must lie in [0, 1)");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("model: threshold must lie in (0, 1)");
  if (embedding_size == 0) throw ConfigError("model: embedding size must be positive");
  for (auto h : mlp_hidden)
    if (h == 0) throw ConfigError("model: MLP hidden widths must be positive");
  if (baseline != BaselineKind::none) {
    if (baseline != BaselineKind::mlp && (temporal_layers == 0 || temporal_hidden == 0))
      throw ConfigError("model: recurrent baseline needs temporal layers");
    return;
  }
  if (spatial == SpatialKind::none && temporal == TemporalKind::none)
    throw ConfigError("model: at least one of the spatial and temporal encoders is required");
  if (spatial != SpatialKind::none) {
    if (spatial_layers == 0 || spatial_hidden == 0) throw ConfigError("model: spatial layers and width must be positive");
    if (attention_heads == 0 || spatial_hidden % attention_heads != 0)
      throw ConfigError("model: spatial width " + std::to_string(spatial_hidden) + " not divisible by " +
                        std::to_string(attention_heads) + " heads");
  }
  if (temporal != TemporalKind::none && (temporal_layers == 0 || temporal_hidden == 0))
    throw ConfigError("model: temporal layers and width must be positive");
}

std::string ModelConfig::name() const {
  if (baseline != BaselineKind::none) return to_string(baseline);
  if (temporal == TemporalKind::none) return to_string(spatial);
  return to_string(spatial) + "-" + to_string(temporal);
}

ModelConfig with_model_name(ModelConfig c, const std::string& name) {
  c.baseline = BaselineKind::none;
  if (name == "mlp") {
    c.baseline = BaselineKind::mlp;
  } else if (name == "lstm") {
    c.baseline = BaselineKind::lstm;
  } else if (name == "gru") {
    c.baseline = BaselineKind::gru;
  } else if (name == "stged") {
    c.spatial = SpatialKind::gtc;
    c.temporal = TemporalKind::lstm;
  } else if (auto dash = name.find('-'); dash != std::string::npos) {
    c.spatial = parse_spatial(name.substr(0, dash));
    c.temporal = parse_temporal(name.substr(dash + 1));
  } else {
    c.spatial = parse_spatial(name);
    c.temporal = TemporalKind::none;
  }
  c.validate();
  return c;
}

}  // namespace stged::model
