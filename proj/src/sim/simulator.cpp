#include "stged/sim/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "stged/core/errors.hpp"
#include "stged/sim/propagation.hpp"

namespace stged::sim {

std::string to_string(MobilityKind kind) {
  return kind == MobilityKind::random_waypoint ? "rwp" : "grouped";
}

MobilityKind parse_mobility(const std::string& text) {
  if (text == "rwp" || text == "random_waypoint") return MobilityKind::random_waypoint;
  if (text == "grouped" || text == "grouped_waypoint") return MobilityKind::grouped_waypoint;
  throw ConfigError("unknown mobility kind '" + text + "' (expected rwp or grouped)");
}

void SimConfig::validate() const {
  if (n_nodes < 2) throw ConfigError("sim: n_nodes must be at least 2");
  if (!(v_max > 0.0)) throw ConfigError("sim: v_max must be positive");
  if (!(arena_m > 0.0)) throw ConfigError("sim: arena extent must be positive");
  if (!(tx_height_m > 0.0 && rx_height_m > 0.0)) throw ConfigError("sim: antenna heights must be positive");
  if (!(frequency_hz > 0.0)) throw ConfigError("sim: frequency must be positive");
  if (!(messages_per_pair_rate >= 0.0)) throw ConfigError("sim: message rate must be non-negative");
  if (!(label_threshold_db > 0.0)) throw ConfigError("sim: label threshold must be positive");
  if (!(emit_margin_db >= 0.0)) throw ConfigError("sim: emit margin must be non-negative");
  if (!(pause_s >= 0.0)) throw ConfigError("sim: pause must be non-negative");
  if (mobility == MobilityKind::grouped_waypoint) {
    if (n_groups == 0 || n_groups > n_nodes) throw ConfigError("sim: n_groups must lie in [1, n_nodes]");
    if (!(group_radius_m > 0.0)) throw ConfigError("sim: group radius must be positive");
    if (!(anchor_speed_fraction > 0.0 && anchor_speed_fraction < 1.0))
      throw ConfigError("sim: anchor speed fraction must lie in (0, 1)");
  }
}

tcn::Snapshot emit_snapshot(const std::vector<tcn::NodeState>& nodes, const SimConfig& c, std::int64_t t, Rng& rng) {
  const TwoRayParams radio{c.frequency_hz, c.tx_height_m, c.rx_height_m};
  const double emit_limit = c.label_threshold_db + c.emit_margin_db;
  tcn::Snapshot snap;
  snap.t = t;
  snap.nodes = nodes;
  std::vector<double> stamps;
  for (const auto& a : nodes) {
    for (const auto& b : nodes) {
      if (a.id == b.id) continue;
      const double d = std::hypot(a.x - b.x, a.y - b.y);
      const double loss = path_loss_db(std::max(d, kMinLossDistance_m), radio);
      if (loss > emit_limit) continue;
      const unsigned k = rng.poisson(c.messages_per_pair_rate * tcn::kStepSeconds);
      stamps.resize(k);
      for (auto& s : stamps) s = rng.uniform() * tcn::kStepSeconds;
      std::sort(stamps.begin(), stamps.end());
      for (double s : stamps) snap.edges.push_back({a.id, b.id, d, loss, propagation_delay_s(d), s});
    }
  }
  return snap;
}

tcn::Dataset simulate(const SimConfig& c) {
  c.validate();
  Rng root(c.seed);
  Rng motion = root.fork();
  Rng traffic = root.fork();

  tcn::Dataset d;
  d.n_nodes = c.n_nodes;
  d.provenance.seed = c.seed;
  MobilityState state = init_mobility(c, motion);
  for (std::size_t t = 0; t < c.n_steps; ++t) {
    if (t > 0) step_mobility(state, c, tcn::kStepSeconds, motion);
    tcn::Snapshot snap = emit_snapshot(state.nodes, c, static_cast<std::int64_t>(t), traffic);
    tcn::validate(snap, c.v_max);
    d.snapshots.push_back(std::make_shared<const tcn::Snapshot>(std::move(snap)));
  }
  return d;
}

std::vector<std::size_t> group_assignment(const SimConfig& c) {
  std::vector<std::size_t> g;
  if (c.mobility != MobilityKind::grouped_waypoint) return g;
  for (std::size_t i = 0; i < c.n_nodes; ++i) g.push_back(i * c.n_groups / c.n_nodes);
  return g;
}

}  // namespace stged::sim
