#pragma once

#include "stged/tcn/types.hpp"

namespace stged::tcn {

/// (i, j) = 1 iff some record i -> j has path loss <= threshold_db
/// (inclusive). Diagonal is zero. Throws DomainError if threshold_db <= 0.
ConnectivityMatrix label_connectivity(const Snapshot& snapshot, double threshold_db = kDefaultThresholdDb);

/// Shortest directed path length in the thresholded connectivity graph.
/// A direct link counts 1; unreachable pairs and the diagonal are 0.
HopMatrix hop_counts(const Snapshot& snapshot, double threshold_db = kDefaultThresholdDb);
HopMatrix hop_counts(const ConnectivityMatrix& links);

}  // namespace stged::tcn
