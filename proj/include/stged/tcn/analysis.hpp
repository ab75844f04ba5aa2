#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stged/core/provenance.hpp"
#include "stged/tcn/types.hpp"

namespace stged::tcn {

/// Per-step summary of the thresholded link graph.
struct ConnectivityPoint {
  std::int64_t t = 0;
  std::size_t links = 0;            // directed links
  double density = 0.0;             // links / (N (N - 1))
  std::size_t reachable_pairs = 0;  // ordered pairs with a path
  std::uint32_t max_hops = 0;
  double mean_hops = 0.0;           // over reachable pairs; 0 if none
};

std::vector<ConnectivityPoint> connectivity_over_time(const Dataset& dataset,
                                                      double threshold_db = kDefaultThresholdDb);

/// Fraction of steps each directed link is present (row = sender).
std::vector<std::vector<double>> mean_connectivity(const Dataset& dataset, double threshold_db = kDefaultThresholdDb);

/// Hop counts from `node` to every node at every step (row = step).
std::vector<std::vector<std::uint32_t>> hop_series(const Dataset& dataset, std::size_t node,
                                                   double threshold_db = kDefaultThresholdDb);

/// Standalone SVG heatmap; white is 0, darker is larger. The provenance
/// is embedded as an XML comment.
std::string svg_heatmap(const std::vector<std::vector<double>>& cells, const std::string& title,
                        const std::string& row_label, const std::string& col_label, const Provenance& provenance);

}  // namespace stged::tcn
