#include "stged/sim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stged::sim {
namespace {

Point uniform_in_square(double side, Rng& rng) { return {rng.uniform(0.0, side), rng.uniform(0.0, side)}; }

Point uniform_in_disk(double radius, Rng& rng) {
  const double r = radius * std::sqrt(rng.uniform());
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(a), r * std::sin(a)};
}

Point heading(const Point& from, const WaypointState& w) {
  if (w.pause_left > 0.0) return {};
  const double dx = w.target.x - from.x, dy = w.target.y - from.y;
  const double dist = std::hypot(dx, dy);
  if (dist == 0.0) return {};
  return {dx / dist * w.speed, dy / dist * w.speed};
}

// Moves p toward its target for dt seconds, renewing the waypoint on arrival.
template <typename DrawTarget>
void pursue(Point& p, WaypointState& w, double dt, double speed_limit, double pause_s, Rng& rng, DrawTarget draw) {
  if (w.pause_left > 0.0) {
    w.pause_left = std::max(0.0, w.pause_left - dt);
    return;
  }
  const double dx = w.target.x - p.x, dy = w.target.y - p.y;
  const double dist = std::hypot(dx, dy);
  const double travel = w.speed * dt;
  if (travel >= dist) {
    p = w.target;
    w.target = draw(rng);
    w.speed = speed_limit * rng.uniform_open_closed();
    w.pause_left = pause_s;
  } else {
    p.x += dx / dist * travel;
    p.y += dy / dist * travel;
  }
}

std::vector<Point> make_route(const SimConfig& c, Rng& rng) {
  const double L = c.arena_m;
  const Point start{0.1 * L, 0.9 * L}, end{0.9 * L, 0.1 * L};
  // Unit normal to the start-end diagonal.
  const double nx = std::numbers::sqrt2 / 2, ny = std::numbers::sqrt2 / 2;
  std::vector<Point> route{start};
  const std::size_t k = c.route_waypoints;
  for (std::size_t i = 1; i <= k; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(k + 1);
    const double lateral = rng.uniform(-0.15, 0.15) * L;
    route.push_back({start.x + f * (end.x - start.x) + lateral * nx, start.y + f * (end.y - start.y) + lateral * ny});
  }
  route.push_back(end);
  return route;
}

Point route_tangent(const std::vector<Point>& route, std::size_t segment) {
  const Point& a = route[segment];
  const Point& b = route[segment + 1];
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  return {(b.x - a.x) / len, (b.y - a.y) / len};
}

void place_anchor(Anchor& a, const std::vector<Point>& route, double limit, Rng& rng, bool force_speed) {
  std::size_t seg = 0;
  a.position = point_on_route(route, a.arc, &seg);
  if (force_speed || seg != a.segment) a.speed = limit * rng.uniform(0.2, 1.0);
  a.segment = seg;
  const Point t = route_tangent(route, seg);
  a.velocity = {t.x * a.direction * a.speed, t.y * a.direction * a.speed};
}

void sync_grouped_nodes(MobilityState& s) {
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const Anchor& a = s.anchors[s.group[i]];
    const Point v = heading(s.offset[i], s.waypoints[i]);
    s.nodes[i].x = a.position.x + s.offset[i].x;
    s.nodes[i].y = a.position.y + s.offset[i].y;
    s.nodes[i].vx = a.velocity.x + v.x;
    s.nodes[i].vy = a.velocity.y + v.y;
  }
}

}  // namespace

double route_length(const std::vector<Point>& route) {
  double total = 0.0;
  for (std::size_t i = 1; i < route.size(); ++i)
    total += std::hypot(route[i].x - route[i - 1].x, route[i].y - route[i - 1].y);
  return total;
}

Point point_on_route(const std::vector<Point>& route, double arc, std::size_t* segment) {
  for (std::size_t i = 1; i < route.size(); ++i) {
    const double len = std::hypot(route[i].x - route[i - 1].x, route[i].y - route[i - 1].y);
    if (arc <= len || i + 1 == route.size()) {
      const double f = len > 0.0 ? std::clamp(arc / len, 0.0, 1.0) : 0.0;
      if (segment) *segment = i - 1;
      return {route[i - 1].x + f * (route[i].x - route[i - 1].x), route[i - 1].y + f * (route[i].y - route[i - 1].y)};
    }
    arc -= len;
  }
  if (segment) *segment = 0;
  return route.front();
}

MobilityState init_mobility(const SimConfig& c, Rng& rng) {
  c.validate();
  MobilityState s;
  s.nodes.resize(c.n_nodes);
  s.waypoints.resize(c.n_nodes);
  for (std::size_t i = 0; i < c.n_nodes; ++i) s.nodes[i].id = static_cast<tcn::NodeId>(i);

  if (c.mobility == MobilityKind::random_waypoint) {
    for (std::size_t i = 0; i < c.n_nodes; ++i) {
      const Point p = uniform_in_square(c.arena_m, rng);
      WaypointState& w = s.waypoints[i];
      w.target = uniform_in_square(c.arena_m, rng);
      w.speed = c.v_max * rng.uniform_open_closed();
      s.nodes[i].x = p.x;
      s.nodes[i].y = p.y;
      const Point v = heading(p, w);
      s.nodes[i].vx = v.x;
      s.nodes[i].vy = v.y;
    }
    return s;
  }

  const double anchor_limit = c.v_max * c.anchor_speed_fraction;
  const double offset_limit = c.v_max - anchor_limit;
  s.route = make_route(c, rng);
  s.anchors.resize(c.n_groups);
  double arc = rng.uniform(0.0, 0.1) * route_length(s.route);
  for (auto& a : s.anchors) {
    a.arc = std::min(arc, route_length(s.route));
    place_anchor(a, s.route, anchor_limit, rng, true);
    arc += rng.uniform(1500.0, 2500.0);
  }
  s.group.resize(c.n_nodes);
  s.offset.resize(c.n_nodes);
  for (std::size_t i = 0; i < c.n_nodes; ++i) {
    s.group[i] = i * c.n_groups / c.n_nodes;  // contiguous id blocks per platoon
    s.offset[i] = uniform_in_disk(c.group_radius_m, rng);
    WaypointState& w = s.waypoints[i];
    w.target = uniform_in_disk(c.group_radius_m, rng);
    w.speed = offset_limit * rng.uniform_open_closed();
  }
  sync_grouped_nodes(s);
  return s;
}

void step_mobility(MobilityState& s, const SimConfig& c, double dt, Rng& rng) {
  if (c.mobility == MobilityKind::random_waypoint) {
    auto draw = [&c](Rng& r) { return uniform_in_square(c.arena_m, r); };
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      Point p{s.nodes[i].x, s.nodes[i].y};
      pursue(p, s.waypoints[i], dt, c.v_max, c.pause_s, rng, draw);
      const Point v = heading(p, s.waypoints[i]);
      s.nodes[i] = {s.nodes[i].id, p.x, p.y, v.x, v.y};
    }
    return;
  }

  const double anchor_limit = c.v_max * c.anchor_speed_fraction;
  const double offset_limit = c.v_max - anchor_limit;
  const double total = route_length(s.route);
  for (auto& a : s.anchors) {
    a.arc += a.direction * a.speed * dt;
    if (a.arc > total) {
      a.arc = 2.0 * total - a.arc;
      a.direction = -1.0;
    } else if (a.arc < 0.0) {
      a.arc = -a.arc;
      a.direction = 1.0;
    }
    place_anchor(a, s.route, anchor_limit, rng, false);
  }
  auto draw = [&c](Rng& r) { return uniform_in_disk(c.group_radius_m, r); };
  for (std::size_t i = 0; i < s.nodes.size(); ++i) pursue(s.offset[i], s.waypoints[i], dt, offset_limit, 0.0, rng, draw);
  sync_grouped_nodes(s);
}

}  // namespace stged::sim
