#pragma once

#include <cstdint>
#include <vector>

#include "swarmcov/engine.hpp"
#include "swarmcov/scenario.hpp"

namespace swarmcov {

/// State captured at one iteration (index 0 is the initial state).
/// Agent-indexed vectors are flat in swarm-major order.
struct IterationRecord {
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
  std::vector<double> swarm_costs;  // coverage cost per swarm
  double min_separation = 0.0;
};

struct CollisionEvent {
  long iteration = 0;
  int agent_a = 0;
  int agent_b = 0;
};

struct TrajectoryLog {
  std::vector<IterationRecord> records;  // iterations executed + 1 entries
  TerminationStatus status = TerminationStatus::Running;
  std::vector<CollisionEvent> collisions;
  std::vector<int> agent_swarm_ids;  // flat agent index -> swarm id

  long iterations() const {
    return static_cast<long>(records.size()) - 1;
  }
};

/// Initial world for a scenario. Region swarms are sampled with per-swarm
/// seeds derived from the scenario seed.
WorldState make_world(const Scenario& s);

/// Steps the world until has_terminated reports Converged or MaxIters,
/// logging every iteration and every continuous-motion collision event.
TrajectoryLog run_scenario(const Scenario& s);

struct RunOutcome {
  int run_index = 0;
  std::uint64_t seed = 0;
  bool sampling_failed = false;
  TerminationStatus status = TerminationStatus::Running;
  double min_separation = 0.0;  // minimum over the whole run
  int collision_events = 0;
  long iterations = 0;
};

struct CampaignReport {
  int runs = 0;
  int collision_free_runs = 0;  // among runs that executed
  std::vector<RunOutcome> outcomes;
};

/// Independent seeded runs of the scenario (per-run seed =
/// mix_seed(master_seed + run index)). Failed runs, such as infeasible
/// samplings, are recorded and excluded from the collision statistics
/// rather than retried.
CampaignReport monte_carlo(const Scenario& s, int runs,
                           std::uint64_t master_seed);

}  // namespace swarmcov
