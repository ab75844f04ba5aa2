#include "stged/model/persist.hpp"

#include <fstream>

#include "stged/core/errors.hpp"
#include "stged/diff/checkpoint.hpp"

namespace stged::model {

using nlohmann::json;

namespace {

template <typename T>
T get(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("model sidecar: missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("model sidecar: field '") + key + "' has the wrong type");
  }
}

std::string metadata(const Provenance& p) { return "command: " + p.command + "\nseed: " + std::to_string(p.seed); }

}  // namespace

json to_json(const ModelConfig& c) {
  return json{{"spatial", to_string(c.spatial)},
              {"temporal", to_string(c.temporal)},
              {"baseline", to_string(c.baseline)},
              {"window", c.window},
              {"spatial_layers", c.spatial_layers},
              {"spatial_hidden", c.spatial_hidden},
              {"attention_heads", c.attention_heads},
              {"embedding_size", c.embedding_size},
              {"temporal_layers", c.temporal_layers},
              {"temporal_hidden", c.temporal_hidden},
              {"mlp_hidden", c.mlp_hidden},
              {"dropout", c.dropout},
              {"threshold", c.threshold},
              {"gat_edge_features", c.gat_edge_features}};
}

ModelConfig model_config_from_json(const json& j) {
  ModelConfig c;
  c.spatial = parse_spatial(get<std::string>(j, "spatial"));
  c.temporal = parse_temporal(get<std::string>(j, "temporal"));
  const auto baseline = get<std::string>(j, "baseline");
  if (baseline == "none")
    c.baseline = BaselineKind::none;
  else if (baseline == "mlp")
    c.baseline = BaselineKind::mlp;
  else if (baseline == "lstm")
    c.baseline = BaselineKind::lstm;
  else if (baseline == "gru")
    c.baseline = BaselineKind::gru;
  else
    throw ConfigError("model sidecar: unknown baseline '" + baseline + "'");
  c.window = get<std::size_t>(j, "window");
  c.spatial_layers = get<std::size_t>(j, "spatial_layers");
  c.spatial_hidden = get<std::size_t>(j, "spatial_hidden");
  c.attention_heads = get<std::size_t>(j, "attention_heads");
  c.embedding_size = get<std::size_t>(j, "embedding_size");
  c.temporal_layers = get<std::size_t>(j, "temporal_layers");
  c.temporal_hidden = get<std::size_t>(j, "temporal_hidden");
  c.mlp_hidden = get<std::vector<std::size_t>>(j, "mlp_hidden");
  c.dropout = get<double>(j, "dropout");
  c.threshold = get<double>(j, "threshold");
  c.gat_edge_features = get<bool>(j, "gat_edge_features");
  c.validate();
  return c;
}

json to_json(const FeatureScaler& s) {
  return json{{"node_mean", s.node_mean}, {"node_std", s.node_std}, {"edge_mean", s.edge_mean}, {"edge_std", s.edge_std}};
}

FeatureScaler scaler_from_json(const json& j) {
  FeatureScaler s;
  s.node_mean = get<decltype(s.node_mean)>(j, "node_mean");
  s.node_std = get<decltype(s.node_std)>(j, "node_std");
  s.edge_mean = get<decltype(s.edge_mean)>(j, "edge_mean");
  s.edge_std = get<decltype(s.edge_std)>(j, "edge_std");
  return s;
}

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint) {
  auto p = checkpoint;
  p += ".json";
  return p;
}

void save_model(const std::filesystem::path& checkpoint, const LinkPredictor& model, const FeatureScaler& scaler,
                const Provenance& provenance, const json& extra) {
  diff::write_checkpoint(checkpoint, diff::make_checkpoint(model.parameters(), metadata(provenance)));
  const json sidecar{{"provenance", {{"command", provenance.command}, {"seed", provenance.seed}}},
                     {"model", to_json(model.config())},
                     {"scaler", to_json(scaler)},
                     {"extra", extra}};
  std::ofstream out(sidecar_path(checkpoint), std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + sidecar_path(checkpoint).string());
  out << sidecar.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + sidecar_path(checkpoint).string());
}

SavedModel load_model(const std::filesystem::path& checkpoint) {
  const auto side = sidecar_path(checkpoint);
  std::ifstream in(side, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model sidecar " + side.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(0, "sidecar", std::string("invalid JSON in ") + side.string() + ": " + e.what());
  }
  SavedModel saved;
  saved.scaler = scaler_from_json(get<json>(j, "scaler"));
  const auto prov = get<json>(j, "provenance");
  saved.provenance = {get<std::string>(prov, "command"), get<std::uint64_t>(prov, "seed")};
  if (auto it = j.find("extra"); it != j.end()) saved.extra = *it;
  saved.model = make_model(model_config_from_json(get<json>(j, "model")), 0);
  diff::restore_parameters(diff::read_checkpoint(checkpoint), saved.model->parameters());
  return saved;
}

}  // namespace stged::model
