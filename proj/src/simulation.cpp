#include "swarmcov/simulation.hpp"

#include <algorithm>
#include <limits>

namespace swarmcov {

namespace {

std::vector<Vec2> flat_positions(const WorldState& world) {
  std::vector<Vec2> out;
  out.reserve(agent_count(world));
  for (const std::vector<Agent>& swarm : world.swarms) {
    for (const Agent& agent : swarm) {
      out.push_back(agent.position);
    }
  }
  return out;
}

std::vector<double> swarm_costs(const WorldState& world) {
  const DensityField phi = DensityField::uniform(1.0);
  std::vector<double> costs;
  costs.reserve(world.swarms.size());
  for (const std::vector<Agent>& swarm : world.swarms) {
    std::vector<Vec2> positions;
    positions.reserve(swarm.size());
    for (const Agent& agent : swarm) {
      positions.push_back(agent.position);
    }
    costs.push_back(coverage_cost(positions, world.arena, phi));
  }
  return costs;
}

double static_min_separation(const WorldState& world) {
  std::vector<const Agent*> flat;
  for (const std::vector<Agent>& swarm : world.swarms) {
    for (const Agent& agent : swarm) {
      flat.push_back(&agent);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      best = std::min(best, (flat[j]->position - flat[i]->position).norm() -
                                flat[i]->radius - flat[j]->radius);
    }
  }
  return best;
}

}  // namespace

WorldState make_world(const Scenario& s) {
  WorldState world;
  world.arena = s.arena;
  world.time_step = s.dt;
  world.tau = s.tau;
  world.avoidance_enabled = s.avoidance;

  int next_id = 0;
  std::vector<Vec2> placed;
  for (std::size_t i = 0; i < s.swarms.size(); ++i) {
    const SwarmSpec& spec = s.swarms[i];
    std::vector<Vec2> positions = spec.positions;
    if (!spec.has_explicit_positions()) {
      positions = sample_initial_positions(*spec.region, s.arena, spec.count,
                                           s.radius, mix_seed(s.seed + i),
                                           placed);
    }
    placed.insert(placed.end(), positions.begin(), positions.end());
    std::vector<Agent> swarm;
    swarm.reserve(positions.size());
    for (const Vec2& p : positions) {
      Agent agent;
      agent.id = next_id++;
      agent.swarm_id = static_cast<int>(i);
      agent.position = p;
      agent.radius = s.radius;
      agent.gain = s.gain;
      agent.v_max = s.v_max;
      agent.assumed_peer_gain = s.gain;
      swarm.push_back(agent);
    }
    world.swarms.push_back(std::move(swarm));
  }
  validate_world(world);
  return world;
}

TrajectoryLog run_scenario(const Scenario& s) {
  WorldState world = make_world(s);

  TrajectoryLog log;
  for (const std::vector<Agent>& swarm : world.swarms) {
    for (const Agent& agent : swarm) {
      log.agent_swarm_ids.push_back(agent.swarm_id);
    }
  }

  IterationRecord initial;
  initial.positions = flat_positions(world);
  initial.velocities.assign(agent_count(world), Vec2::Zero());
  initial.swarm_costs = swarm_costs(world);
  initial.min_separation = static_min_separation(world);
  log.records.push_back(std::move(initial));

  TerminationStatus status = has_terminated(world, s.eps, s.max_iters);
  while (status == TerminationStatus::Running) {
    auto [next, report] = step(world);
    world = std::move(next);

    IterationRecord record;
    record.positions = flat_positions(world);
    record.velocities = report.new_velocities;
    record.swarm_costs = swarm_costs(world);
    record.min_separation = report.min_separation;
    log.records.push_back(std::move(record));

    for (const auto& [a, b] : report.violating_pairs) {
      log.collisions.push_back(CollisionEvent{world.iteration, a, b});
    }
    status = has_terminated(world, s.eps, s.max_iters);
  }
  log.status = status;
  return log;
}

CampaignReport monte_carlo(const Scenario& s, int runs,
                           std::uint64_t master_seed) {
  if (runs < 1) {
    throw ScenarioError("monte_carlo: runs must be >= 1");
  }
  CampaignReport report;
  report.runs = runs;
  report.outcomes.reserve(static_cast<std::size_t>(runs));
  for (int run = 0; run < runs; ++run) {
    RunOutcome outcome;
    outcome.run_index = run;
    outcome.seed = mix_seed(master_seed + static_cast<std::uint64_t>(run));

    Scenario per_run = s;
    per_run.seed = outcome.seed;
    try {
      const TrajectoryLog log = run_scenario(per_run);
      outcome.status = log.status;
      outcome.iterations = log.iterations();
      outcome.collision_events = static_cast<int>(log.collisions.size());
      outcome.min_separation = std::numeric_limits<double>::infinity();
      for (const IterationRecord& r : log.records) {
        outcome.min_separation =
            std::min(outcome.min_separation, r.min_separation);
      }
      if (outcome.collision_events == 0) {
        ++report.collision_free_runs;
      }
    } catch (const ScenarioError&) {
      outcome.sampling_failed = true;
    }
    report.outcomes.push_back(outcome);
  }
  return report;
}

}  // namespace swarmcov
