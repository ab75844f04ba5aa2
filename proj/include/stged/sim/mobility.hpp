#pragma once

#include <cstddef>
#include <vector>

#include "stged/core/rng.hpp"
#include "stged/sim/config.hpp"
#include "stged/tcn/types.hpp"

namespace stged::sim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Per-node waypoint pursuit. In grouped mode the target is an offset in
/// the frame of the node's group anchor.
struct WaypointState {
  Point target;
  double speed = 0.0;  // in (0, limit]
  double pause_left = 0.0;
};

/// Group anchor travelling back and forth along the shared route.
struct Anchor {
  double arc = 0.0;        // arc length position along the route
  double direction = 1.0;  // +1 forward, -1 backward
  double speed = 0.0;
  std::size_t segment = 0;  // route segment the speed was drawn for
  Point position;
  Point velocity;
};

struct MobilityState {
  std::vector<tcn::NodeState> nodes;
  std::vector<WaypointState> waypoints;
  // Grouped mode only.
  std::vector<std::size_t> group;  // group of each node
  std::vector<Point> offset;       // node position relative to its anchor
  std::vector<Anchor> anchors;
  std::vector<Point> route;
};

/// Initial positions, targets and speeds.
MobilityState init_mobility(const SimConfig& config, Rng& rng);

/// Advances every node by dt seconds. A node never moves more than
/// v_max * dt; on reaching its target it draws a new target and a speed
/// uniform in (0, limit]. Reported velocities are the ones the nodes head
/// off with after the step.
void step_mobility(MobilityState& state, const SimConfig& config, double dt, Rng& rng);

double route_length(const std::vector<Point>& route);
Point point_on_route(const std::vector<Point>& route, double arc, std::size_t* segment = nullptr);

}  // namespace stged::sim
