#include "swarmcov/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace swarmcov {

namespace {

struct SwarmFrame {
  std::vector<Vec2> positions;
  std::vector<Vec2> centroids;
};

std::vector<SwarmFrame> build_frames(const WorldState& world) {
  std::vector<SwarmFrame> frames;
  frames.reserve(world.swarms.size());
  for (const std::vector<Agent>& swarm : world.swarms) {
    SwarmFrame frame;
    frame.positions.reserve(swarm.size());
    for (const Agent& agent : swarm) {
      frame.positions.push_back(agent.position);
    }
    const VoronoiDiagram diagram = voronoi_cells(frame.positions, world.arena);
    frame.centroids.reserve(swarm.size());
    for (const ConvexPolygon& cell : diagram.cells) {
      frame.centroids.push_back(
          cell_center_of_mass(cell, DensityField::uniform(1.0)));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

double max_centroid_gap(const std::vector<SwarmFrame>& frames) {
  double gap = 0.0;
  for (const SwarmFrame& frame : frames) {
    for (std::size_t a = 0; a < frame.positions.size(); ++a) {
      gap = std::max(gap, (frame.centroids[a] - frame.positions[a]).norm());
    }
  }
  return gap;
}

VelocityDecision velocity_from_frames(const WorldState& world,
                                      const std::vector<SwarmFrame>& frames,
                                      std::size_t s, std::size_t a) {
  const Agent& me = world.swarms[s][a];
  const Vec2 v_pref =
      lloyd_velocity(me.position, frames[s].centroids[a], me.gain);
  if (!world.avoidance_enabled) {
    return VelocityDecision{v_pref, true};
  }

  std::vector<HalfPlane> constraints;
  for (std::size_t l = 0; l < world.swarms.size(); ++l) {
    for (std::size_t k = 0; k < world.swarms[l].size(); ++k) {
      if (l == s && k == a) {
        continue;
      }
      const Agent& peer = world.swarms[l][k];
      const Vec2 peer_pref = lloyd_velocity(
          peer.position, frames[l].centroids[k], me.assumed_peer_gain);
      const double dist = (peer.position - me.position).norm();
      AvoidanceConstraint c;
      // The 1e-9 shell around exact touching counts as non-overlapping,
      // matching detect_collisions; there the cone degenerates to the
      // perpendicular half-plane and grazing pairs slide instead of
      // passing through.
      if (dist <= me.radius + peer.radius - 1e-9) {
        c = overlap_recovery_constraint(me.position, peer.position, me.radius,
                                        peer.radius, world.time_step, v_pref,
                                        peer_pref, peer.id);
      } else {
        const TruncatedCone cone = velocity_obstacle(
            me.position, peer.position, me.radius, peer.radius, world.tau);
        c = orca_halfplane(cone, v_pref, peer_pref, peer.id);
      }
      // Drop constraints the whole speed disc already satisfies.
      if (c.halfplane.point.dot(c.halfplane.normal) > -me.v_max) {
        constraints.push_back(c.halfplane);
      }
    }
  }

  // Keep the agent's disc inside the arena: every edge reachable this step
  // contributes a half-plane on the velocity.
  const std::vector<Vec2>& vs = world.arena.vertices();
  const double reach = me.v_max * world.time_step + me.radius;
  for (std::size_t e = 0; e < vs.size(); ++e) {
    const Vec2& ea = vs[e];
    const Vec2& eb = vs[(e + 1) % vs.size()];
    const Vec2 inward = perp_ccw((eb - ea).normalized());
    const double d = (me.position - ea).dot(inward);
    if (d < reach) {
      constraints.push_back(HalfPlane{
          inward * ((me.radius - d) / world.time_step), inward});
    }
  }

  const PermittedVelocity lp =
      permitted_velocity(std::span<const HalfPlane>(constraints), me.v_max,
                         v_pref);
  return VelocityDecision{lp.velocity, lp.feasible};
}

Vec2 project_into_polygon(const ConvexPolygon& poly, const Vec2& p) {
  if (contains(poly, p)) {
    return p;
  }
  const std::vector<Vec2>& vs = poly.vertices();
  double best = std::numeric_limits<double>::infinity();
  Vec2 best_point = p;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % vs.size()];
    const Vec2 ab = b - a;
    const double t =
        std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    const Vec2 q = a + t * ab;
    const double d = (p - q).squaredNorm();
    if (d < best) {
      best = d;
      best_point = q;
    }
  }
  return best_point;
}

// Minimum of |q0 + t dq| - radius_sum over t in [0, horizon].
double min_pair_separation(const Vec2& q0, const Vec2& dq, double radius_sum,
                           double horizon) {
  double best = q0.norm();
  const double dq2 = dq.squaredNorm();
  if (dq2 > 0.0) {
    const double t_star = std::clamp(-q0.dot(dq) / dq2, 0.0, horizon);
    best = std::min(best, (q0 + t_star * dq).norm());
    best = std::min(best, (q0 + horizon * dq).norm());
  }
  return best - radius_sum;
}

}  // namespace

void validate_world(const WorldState& world) {
  if (world.arena.is_empty()) {
    throw std::invalid_argument("WorldState: empty arena");
  }
  if (world.swarms.empty()) {
    throw std::invalid_argument("WorldState: at least one swarm required");
  }
  if (!(world.time_step > 0.0) || !(world.tau > 0.0)) {
    throw std::invalid_argument("WorldState: time_step and tau must be > 0");
  }
  for (std::size_t s = 0; s < world.swarms.size(); ++s) {
    if (world.swarms[s].empty()) {
      std::ostringstream os;
      os << "WorldState: swarm " << s << " has no agents";
      throw std::invalid_argument(os.str());
    }
    for (const Agent& agent : world.swarms[s]) {
      if (!(agent.radius > 0.0) || !(agent.gain > 0.0) ||
          !(agent.v_max > 0.0) || !(agent.assumed_peer_gain > 0.0)) {
        std::ostringstream os;
        os << "WorldState: agent " << agent.id
           << " has a non-positive radius, gain, or speed limit";
        throw std::invalid_argument(os.str());
      }
      if (!contains(world.arena, agent.position)) {
        std::ostringstream os;
        os << "WorldState: agent " << agent.id << " at ("
           << agent.position.x() << ", " << agent.position.y()
           << ") lies outside the arena";
        throw std::invalid_argument(os.str());
      }
    }
  }
}

std::size_t agent_count(const WorldState& world) {
  std::size_t n = 0;
  for (const std::vector<Agent>& swarm : world.swarms) {
    n += swarm.size();
  }
  return n;
}

Vec2 estimate_peer_velocity(std::span<const Vec2> swarm_positions,
                            std::size_t peer_index, double assumed_gain,
                            const ConvexPolygon& arena) {
  if (peer_index >= swarm_positions.size()) {
    throw std::invalid_argument(
        "estimate_peer_velocity: peer index out of range");
  }
  const VoronoiDiagram diagram = voronoi_cells(swarm_positions, arena);
  const Vec2 cm = cell_center_of_mass(diagram.cells[peer_index],
                                      DensityField::uniform(1.0));
  return lloyd_velocity(swarm_positions[peer_index], cm, assumed_gain);
}

VelocityDecision agent_velocity(const WorldState& world, std::size_t swarm,
                                std::size_t agent) {
  if (swarm >= world.swarms.size() || agent >= world.swarms[swarm].size()) {
    throw std::invalid_argument("agent_velocity: index out of range");
  }
  return velocity_from_frames(world, build_frames(world), swarm, agent);
}

std::pair<WorldState, StepReport> step(const WorldState& world) {
  const std::vector<SwarmFrame> frames = build_frames(world);

  StepReport report;
  report.new_velocities.reserve(agent_count(world));
  for (std::size_t s = 0; s < world.swarms.size(); ++s) {
    for (std::size_t a = 0; a < world.swarms[s].size(); ++a) {
      const VelocityDecision d = velocity_from_frames(world, frames, s, a);
      report.new_velocities.push_back(d.velocity);
      if (!d.feasible) {
        report.infeasible_agents.push_back(world.swarms[s][a].id);
      }
    }
  }

  // Continuous-motion separation over the step (closed-form quadratic
  // minimum; endpoint-only checks can miss tunneling at high speeds).
  std::vector<const Agent*> flat;
  flat.reserve(agent_count(world));
  for (const std::vector<Agent>& swarm : world.swarms) {
    for (const Agent& agent : swarm) {
      flat.push_back(&agent);
    }
  }
  report.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      const Vec2 q0 = flat[j]->position - flat[i]->position;
      const Vec2 dq = report.new_velocities[j] - report.new_velocities[i];
      const double sep = min_pair_separation(
          q0, dq, flat[i]->radius + flat[j]->radius, world.time_step);
      report.min_separation = std::min(report.min_separation, sep);
      if (sep < -1e-9) {
        report.violating_pairs.emplace_back(flat[i]->id, flat[j]->id);
      }
    }
  }
  if (flat.size() < 2) {
    report.min_separation = std::numeric_limits<double>::infinity();
  }

  WorldState next = world;
  std::size_t flat_index = 0;
  for (std::vector<Agent>& swarm : next.swarms) {
    for (Agent& agent : swarm) {
      agent.position = project_into_polygon(
          next.arena,
          agent.position +
              world.time_step * report.new_velocities[flat_index]);
      ++flat_index;
    }
  }
  next.iteration = world.iteration + 1;
  next.centroid_gap_history.push_back(max_centroid_gap(build_frames(next)));
  return {std::move(next), std::move(report)};
}

std::vector<std::pair<int, int>> detect_collisions(const WorldState& world) {
  std::vector<const Agent*> flat;
  flat.reserve(agent_count(world));
  for (const std::vector<Agent>& swarm : world.swarms) {
    for (const Agent& agent : swarm) {
      flat.push_back(&agent);
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      const double dist = (flat[j]->position - flat[i]->position).norm();
      if (dist < flat[i]->radius + flat[j]->radius - 1e-9) {
        pairs.emplace_back(flat[i]->id, flat[j]->id);
      }
    }
  }
  return pairs;
}

TerminationStatus has_terminated(const WorldState& world, double eps,
                                 long max_iters) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("has_terminated: eps must be > 0");
  }
  const std::vector<double>& gaps = world.centroid_gap_history;
  if (gaps.size() >= 10) {
    bool settled = true;
    for (std::size_t k = gaps.size() - 10; k < gaps.size(); ++k) {
      if (!(gaps[k] < eps)) {
        settled = false;
        break;
      }
    }
    if (settled) {
      return TerminationStatus::Converged;
    }
  }
  if (world.iteration >= max_iters) {
    return TerminationStatus::MaxIters;
  }
  return TerminationStatus::Running;
}

}  // namespace swarmcov
