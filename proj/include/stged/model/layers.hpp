#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stged/core/rng.hpp"
#include "stged/diff/ops.hpp"
#include "stged/diff/parameter.hpp"

namespace stged::model {

using diff::Var;

/// Seeded source of dropout masks. Passing no source (nullptr) to a forward
/// pass means evaluation mode.
class DropoutSource {
public:
  DropoutSource(double p, std::uint64_t seed);

  double p() const noexcept { return p_; }
  /// Keep-mask scaled by 1/(1-p).
  diff::Tensor mask(std::size_t rows, std::size_t cols);

private:
  double p_;
  Rng rng_;
};

Var apply_dropout(Var x, DropoutSource* dropout);

/// x W + b.
struct Dense {
  diff::Parameter* w = nullptr;
  diff::Parameter* b = nullptr;

  static Dense create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t out, Rng& rng);
  Var operator()(Var x) const;
};

/// Feed-forward stack: hidden layers use leaky ReLU and dropout, the output
/// layer is linear.
class Mlp {
public:
  Mlp() = default;
  Mlp(diff::ParameterStore& store, const std::string& name, std::size_t in, const std::vector<std::size_t>& hidden,
      std::size_t out, Rng& rng);

  Var forward(Var x, DropoutSource* dropout) const;
  std::size_t input_size() const noexcept { return in_; }

private:
  std::size_t in_ = 0;
  std::vector<Dense> layers_;
};

struct LstmWeights {
  diff::Parameter *wf, *wi, *wo, *wg;  // (in + hidden) x hidden, acting on [x | h]
  diff::Parameter *bf, *bi, *bo, *bg;

  static LstmWeights create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t hidden,
                            Rng& rng);
};

/// One step for a batch of rows. Returns (h_t, c_t).
std::pair<Var, Var> lstm_step(Var x, Var h_prev, Var c_prev, const LstmWeights& w);

struct GruWeights {
  diff::Parameter *wz, *wr, *wn;  // (in + hidden) x hidden
  diff::Parameter *bz, *br, *bn;

  static GruWeights create(diff::ParameterStore& store, const std::string& name, std::size_t in, std::size_t hidden,
                           Rng& rng);
};

/// h_t = (1 - z) * n + z * h_prev with n = tanh([x | r * h_prev] W_n + b_n).
Var gru_step(Var x, Var h_prev, const GruWeights& w);

/// Pair scores sigmoid(MLP([emb_src | emb_dst])), one row per pair.
Var decode_pairs(const Mlp& decoder, Var embeddings, const diff::Index& src, const diff::Index& dst,
                 DropoutSource* dropout);

/// Link decision: strictly above the threshold.
inline bool decide(double score, double threshold) { return score > threshold; }

}  // namespace stged::model
