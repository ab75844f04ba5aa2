#pragma once

#include <filesystem>
#include <memory>

#include "json.hpp"
#include "stged/core/provenance.hpp"
#include "stged/model/config.hpp"
#include "stged/model/features.hpp"
#include "stged/model/predictor.hpp"

namespace stged::model {

// A saved model is a binary checkpoint of the weights plus a JSON sidecar
// (<checkpoint>.json) holding the model config, the feature scaler and the
// producing command line and seed.

nlohmann::json to_json(const ModelConfig& config);
/// Throws ConfigError on missing or invalid fields.
ModelConfig model_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FeatureScaler& scaler);
FeatureScaler scaler_from_json(const nlohmann::json& j);

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint);

/// `extra` is stored verbatim under "extra" (e.g. how the data was split).
void save_model(const std::filesystem::path& checkpoint, const LinkPredictor& model, const FeatureScaler& scaler,
                const Provenance& provenance, const nlohmann::json& extra = nlohmann::json::object());

struct SavedModel {
  std::unique_ptr<LinkPredictor> model;
  FeatureScaler scaler;
  Provenance provenance;
  nlohmann::json extra;
};

SavedModel load_model(const std::filesystem::path& checkpoint);

}  // namespace stged::model
