#pragma once

#include <string>

#include "swarmcov/simulation.hpp"

namespace swarmcov {

/// One row per (iteration, agent): iteration, swarm_id, agent_id, x, y,
/// vx, vy, min_separation, swarm_cost. Header row first; numeric fields
/// carry 9 significant digits. Re-exporting the same log is byte-identical.
std::string export_csv(const TrajectoryLog& log);

/// Static SVG 1.1 document in the style of the usual coverage plots: the
/// arena outline, one trajectory polyline per agent colored by swarm, and
/// one terminal disc per agent at its true radius.
std::string render_svg(const TrajectoryLog& log, const Scenario& s);

}  // namespace swarmcov
