#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stged/core/rng.hpp"
#include "stged/diff/gradcheck.hpp"
#include "stged/model/features.hpp"
#include "stged/tcn/types.hpp"

namespace stged::model {

/// Snapshot with n nodes and `edges` random records (multi-edges allowed),
/// physically plausible ranges.
tcn::Snapshot random_snapshot(std::size_t n, std::size_t edges, std::int64_t t, Rng& rng);

struct GradientCase {
  std::string name;
  diff::GradCheckResult result;
  std::size_t parameters = 0;  // scalar count
};

/// Finite-difference checks of every layer kind (gcn, gat, gatv2, gtc,
/// lstm, gru, MLP decoder) on small random inputs, and of the composed
/// gtc-lstm model at desk widths on 3 nodes with a 2-step window.
std::vector<GradientCase> gradient_suite(double eps = 1e-5, std::uint64_t seed = 1,
                                         std::size_t max_entries_per_parameter = 0);

}  // namespace stged::model
