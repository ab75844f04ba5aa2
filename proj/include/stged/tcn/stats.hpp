#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "stged/tcn/types.hpp"

namespace stged::tcn {

struct FeatureMoments {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

/// Dataset summary: node features vx, vy; edge features distance,
/// path loss, propagation delay, timestamp.
struct DatasetStats {
  static constexpr std::array<std::string_view, 2> kNodeFeatures{"velocity_x", "velocity_y"};
  static constexpr std::array<std::string_view, 4> kEdgeFeatures{"distance_m", "path_loss_db", "prop_delay_s",
                                                                 "timestamp_s"};

  std::size_t states = 0;
  double avg_nodes = 0.0;
  double avg_edges = 0.0;
  std::array<FeatureMoments, 2> node;
  std::array<FeatureMoments, 4> edge;
};

DatasetStats compute_stats(const Dataset& dataset);

}  // namespace stged::tcn
