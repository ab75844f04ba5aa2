#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stged/core/rng.hpp"
#include "stged/model/features.hpp"
#include "stged/tcn/types.hpp"

namespace stged::train {

/// One ordered pair of one window with its next-step label.
struct LabeledPair {
  std::size_t window = 0;
  model::NodePair pair;
  std::uint8_t label = 0;
  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

/// Every ordered pair (i != j) of a label matrix, row-major.
std::vector<LabeledPair> labeled_pairs(const tcn::ConnectivityMatrix& labels, std::size_t window = 0);

/// Keeps the smaller class whole and samples as many members of the larger
/// class without replacement; the result is shuffled. Throws DomainError
/// naming the class if either class is empty.
std::vector<LabeledPair> balance(std::span<const LabeledPair> pairs, Rng& rng);

}  // namespace stged::train
