#include "stged/model/predictor.hpp"

#include "stged/core/errors.hpp"

namespace stged::model {
namespace {

diff::Index sources(std::span<const NodePair> pairs) {
  diff::Index out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.src);
  return out;
}

diff::Index destinations(std::span<const NodePair> pairs) {
  diff::Index out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.dst);
  return out;
}

}  // namespace

LinkPredictor::LinkPredictor(ModelConfig config) : config_(std::move(config)) { config_.validate(); }

std::vector<double> LinkPredictor::predict(const PreparedData& data, std::size_t start,
                                           std::span<const NodePair> pairs) const {
  diff::Tape tape;
  const auto& v = score_pairs(tape, data, start, pairs, nullptr).value().values();
  return {v.begin(), v.end()};
}

void LinkPredictor::check_request(const PreparedData& data, std::size_t start, std::span<const NodePair> pairs) const {
  if (start + config_.window > data.size())
    throw ContractError("window of " + std::to_string(config_.window) + " snapshots at position " +
                        std::to_string(start) + " exceeds " + std::to_string(data.size()) + " prepared snapshots");
  if (pairs.empty()) throw ContractError("no pairs to score");
  for (const auto& p : pairs)
    if (p.src == p.dst || p.src >= data.n_nodes() || p.dst >= data.n_nodes())
      throw ContractError("invalid pair (" + std::to_string(p.src) + ", " + std::to_string(p.dst) + ") for " +
                          std::to_string(data.n_nodes()) + " nodes");
}

StgedModel::StgedModel(ModelConfig config, std::uint64_t seed) : LinkPredictor(std::move(config)) {
  if (config_.baseline != BaselineKind::none) throw ConfigError("graph model configured as baseline " + config_.name());
  Rng rng(seed);
  std::size_t width = kNodeFeatures;
  if (config_.spatial != SpatialKind::none) {
    spatial_ = SpatialEncoder(params_, config_, width, rng);
    width = spatial_.output_size();
  }
  if (config_.temporal != TemporalKind::none) {
    temporal_ = RecurrentStack(params_, "temporal", config_.temporal, width, config_.temporal_layers,
                               config_.temporal_hidden, config_.embedding_size, rng);
    width = temporal_.output_size();
  }
  embedding_width_ = width;
  decoder_ = Mlp(params_, "decoder", 2 * width, config_.mlp_hidden, 1, rng);
}

Var StgedModel::encode(diff::Tape& tape, const PreparedData& data, std::size_t start, DropoutSource* dropout) const {
  if (start + config_.window > data.size())
    throw ContractError("window of " + std::to_string(config_.window) + " snapshots at position " +
                        std::to_string(start) + " exceeds " + std::to_string(data.size()) + " prepared snapshots");
  const std::size_t first = config_.temporal == TemporalKind::none ? start + config_.window - 1 : start;
  std::vector<Var> sequence;
  for (std::size_t s = first; s < start + config_.window; ++s) {
    const auto& g = data.graph(s);
    Var x = tape.constant(g.node_feats);
    if (config_.spatial != SpatialKind::none) x = spatial_.forward(x, g, dropout);
    sequence.push_back(x);
  }
  if (config_.temporal == TemporalKind::none) return sequence.back();
  return temporal_.forward(sequence, dropout);
}

diff::Tensor StgedModel::encode_window(const tcn::TemporalWindow& window, const FeatureScaler& scaler) const {
  if (window.length() != config_.window)
    throw ContractError("window has " + std::to_string(window.length()) + " snapshots, model expects " +
                        std::to_string(config_.window));
  PreparedData data(window.snapshots, scaler);
  diff::Tape tape;
  return encode(tape, data, 0, nullptr).value();
}

Var StgedModel::score_pairs(diff::Tape& tape, const PreparedData& data, std::size_t start,
                            std::span<const NodePair> pairs, DropoutSource* dropout) const {
  check_request(data, start, pairs);
  Var z = encode(tape, data, start, dropout);
  return decode_pairs(decoder_, z, sources(pairs), destinations(pairs), dropout);
}

PairBaseline::PairBaseline(ModelConfig config, std::uint64_t seed) : LinkPredictor(std::move(config)) {
  Rng rng(seed);
  switch (config_.baseline) {
    case BaselineKind::mlp: {
      std::vector<std::size_t> hidden{config_.embedding_size};
      hidden.insert(hidden.end(), config_.mlp_hidden.begin(), config_.mlp_hidden.end());
      head_ = Mlp(params_, "baseline.mlp", kPairStepFeatures * config_.window, hidden, 1, rng);
      break;
    }
    case BaselineKind::lstm:
    case BaselineKind::gru:
      recurrent_ = RecurrentStack(params_, "baseline.rnn",
                                  config_.baseline == BaselineKind::lstm ? TemporalKind::lstm : TemporalKind::gru,
                                  kPairStepFeatures, config_.temporal_layers, config_.temporal_hidden,
                                  config_.embedding_size, rng);
      head_ = Mlp(params_, "baseline.head", config_.embedding_size, config_.mlp_hidden, 1, rng);
      break;
    case BaselineKind::none:
      throw ConfigError("pair baseline needs a baseline kind");
  }
}

Var PairBaseline::score_pairs(diff::Tape& tape, const PreparedData& data, std::size_t start,
                              std::span<const NodePair> pairs, DropoutSource* dropout) const {
  check_request(data, start, pairs);
  const std::size_t n = data.n_nodes();
  std::vector<Var> steps;
  for (std::size_t s = start; s < start + config_.window; ++s) {
    const auto& all = data.pair_features(s);
    diff::Tensor rows = diff::Tensor::matrix(pairs.size(), kPairStepFeatures);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const std::size_t src_row = pair_index(n, pairs[p].src, pairs[p].dst);
      for (std::size_t k = 0; k < kPairStepFeatures; ++k) rows.at(p, k) = all.at(src_row, k);
    }
    steps.push_back(tape.constant(std::move(rows)));
  }
  Var features = config_.baseline == BaselineKind::mlp ? diff::concat_cols(steps) : recurrent_.forward(steps, dropout);
  return diff::sigmoid(head_.forward(features, dropout));
}

std::unique_ptr<LinkPredictor> make_model(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  if (config.baseline != BaselineKind::none) return std::make_unique<PairBaseline>(config, seed);
  return std::make_unique<StgedModel>(config, seed);
}

}  // namespace stged::model
