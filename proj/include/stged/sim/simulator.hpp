#pragma once

#include <vector>

#include "stged/core/rng.hpp"
#include "stged/sim/config.hpp"
#include "stged/sim/mobility.hpp"
#include "stged/tcn/types.hpp"

namespace stged::sim {

/// Message records for step t. Every ordered pair within
/// label_threshold_db + emit_margin_db draws Poisson(rate * 1 s) records
/// with timestamps uniform within the step.
tcn::Snapshot emit_snapshot(const std::vector<tcn::NodeState>& nodes, const SimConfig& config, std::int64_t t,
                            Rng& rng);

/// n_steps snapshots, deterministic in config.seed. Every snapshot is
/// validated against the data-model invariants before it is returned.
tcn::Dataset simulate(const SimConfig& config);

/// Group membership of each node in grouped mode (empty for random waypoint).
std::vector<std::size_t> group_assignment(const SimConfig& config);

}  // namespace stged::sim
