#pragma once

#include <span>
#include <utility>
#include <vector>

#include "swarmcov/coverage.hpp"
#include "swarmcov/geom2d.hpp"
#include "swarmcov/orca.hpp"
#include "swarmcov/voronoi.hpp"

namespace swarmcov {

struct Agent {
  int id = 0;
  int swarm_id = 0;
  Vec2 position = Vec2::Zero();
  double radius = 0.2;
  double gain = 1.0;
  double v_max = 3.0;
  /// Gain assumed for every other agent when estimating its preferred
  /// velocity (all swarms are assumed to run the same strategy). Defaults
  /// to the agent's own gain.
  double assumed_peer_gain = 1.0;
};

enum class TerminationStatus { Running, Converged, MaxIters };

/// Full simulation state between iterations. Values are immutable between
/// steps; step() produces a fresh state.
struct WorldState {
  ConvexPolygon arena;
  std::vector<std::vector<Agent>> swarms;
  double time_step = 0.1;
  double tau = 0.1;  // collision-avoidance horizon, one iteration by default
  long iteration = 0;
  bool avoidance_enabled = true;
  /// Per executed step: the largest distance from any agent to the center
  /// of mass of its own-swarm Voronoi cell, evaluated at the post-step
  /// positions. Feeds the convergence streak in has_terminated.
  std::vector<double> centroid_gap_history;
};

/// Throws std::invalid_argument on invariant violations: empty swarms,
/// non-positive parameters, or positions outside the arena.
void validate_world(const WorldState& world);

std::size_t agent_count(const WorldState& world);

struct VelocityDecision {
  Vec2 velocity = Vec2::Zero();
  bool feasible = true;
};

struct StepReport {
  /// New velocities in swarm-major order.
  std::vector<Vec2> new_velocities;
  /// Ids of agents whose permitted-velocity set was empty this step.
  std::vector<int> infeasible_agents;
  /// Minimum over all pairs of (center distance - radius sum) along the
  /// continuous linear motion of the step, not just its endpoints.
  double min_separation = 0.0;
  /// Pairs whose continuous separation dipped below zero during the step.
  std::vector<std::pair<int, int>> violating_pairs;
};

/// Preferred velocity a peer is assumed to adopt: the Lloyd input computed
/// from its own swarm's Voronoi diagram with the given assumed gain.
Vec2 estimate_peer_velocity(std::span<const Vec2> swarm_positions,
                            std::size_t peer_index, double assumed_gain,
                            const ConvexPolygon& arena);

/// The per-agent procedure for one iteration: own cell and preferred
/// velocity, one ORCA half-plane per other agent in every swarm (from
/// estimated peer preferred velocities), arena-edge constraints for edges
/// within reach, then the nearest permitted velocity to the preference.
/// With avoidance disabled the preferred velocity is returned directly.
VelocityDecision agent_velocity(const WorldState& world, std::size_t swarm,
                                std::size_t agent);

/// One synchronized iteration: all velocities are computed from an
/// immutable snapshot of the current positions, then every position is
/// updated simultaneously (first-order integration) and clamped to the
/// arena.
std::pair<WorldState, StepReport> step(const WorldState& world);

/// Unordered agent-id pairs whose center distance is below the sum of
/// radii (minus tolerance 1e-9; touching is not a collision).
std::vector<std::pair<int, int>> detect_collisions(const WorldState& world);

/// Converged once every agent has stayed within eps of its cell center of
/// mass for 10 consecutive iterations; MaxIters at the iteration bound.
TerminationStatus has_terminated(const WorldState& world, double eps,
                                 long max_iters);

}  // namespace swarmcov
