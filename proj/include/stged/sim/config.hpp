#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "stged/tcn/types.hpp"

namespace stged::sim {

enum class MobilityKind { random_waypoint, grouped_waypoint };

std::string to_string(MobilityKind kind);
/// Accepts "rwp" / "random_waypoint" and "grouped" / "grouped_waypoint".
MobilityKind parse_mobility(const std::string& text);

struct SimConfig {
  std::size_t n_nodes = 24;
  std::size_t n_steps = 600;
  MobilityKind mobility = MobilityKind::random_waypoint;
  double v_max = 10.0;     // m/s
  double arena_m = 5000.0;  // side of the square arena
  double pause_s = 0.0;     // random waypoint pause on arrival

  // Grouped (platoon) mobility.
  std::size_t n_groups = 3;
  double group_radius_m = 200.0;       // max distance of a node from its group anchor
  double anchor_speed_fraction = 0.5;  // anchors move at most this fraction of v_max
  std::size_t route_waypoints = 8;     // interior vertices of the shared route

  // Two-ray propagation.
  double frequency_hz = 3.0e8;
  double tx_height_m = 1.5;
  double rx_height_m = 1.5;

  // Message events.
  double messages_per_pair_rate = 1.2;  // Poisson mean per ordered pair per second
  double label_threshold_db = tcn::kDefaultThresholdDb;
  double emit_margin_db = 6.0;  // pairs up to threshold + margin may emit records

  std::uint64_t seed = 1;

  /// Throws ConfigError on the first violated invariant.
  void validate() const;
};

}  // namespace stged::sim
