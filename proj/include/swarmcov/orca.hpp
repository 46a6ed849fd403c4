#pragma once

#include <span>
#include <vector>

#include "swarmcov/geom2d.hpp"

namespace swarmcov {

/// Velocity obstacle of one agent induced by another over a time horizon:
/// the set of relative velocities v for which some t in (0, tau] puts t*v
/// inside the open disc of radius (rA + rB) around (xB - xA). Geometrically
/// a cone from the velocity-space origin tangent to that disc, truncated
/// near the apex by the scaled disc D(disc_center, disc_radius).
struct TruncatedCone {
  Vec2 apex = Vec2::Zero();    // origin of velocity space
  Vec2 disc_center;            // (xB - xA) / tau
  double disc_radius = 0.0;    // (rA + rB) / tau
  double tau = 0.0;
  Vec2 relative_position;      // xB - xA
  double combined_radius = 0.0;

  // Tangent legs; defined only when the agents do not overlap
  // (|xB - xA| > rA + rB).
  bool has_legs = false;
  Vec2 leg_left;       // unit direction, counterclockwise side of the axis
  Vec2 leg_right;      // unit direction, clockwise side
  Vec2 tangent_left;   // leg start points on the truncation circle
  Vec2 tangent_right;

  /// Exact membership test for the set above (open disc, strict times).
  bool member(const Vec2& v) const;
};

TruncatedCone velocity_obstacle(const Vec2& xA, const Vec2& xB, double rA,
                                double rB, double tau);

/// Vector from a relative velocity to the closest point on the obstacle
/// boundary, together with the outward unit normal at that point.
struct BoundaryAdjustment {
  Vec2 w;
  Vec2 normal;
};

/// Closest point on the cone boundary (truncation arc or tangent legs) to
/// v_rel. When v_rel sits exactly at the truncation disc center every arc
/// point is equidistant; the tie is broken toward the counterclockwise
/// perpendicular of the cone axis, so symmetric agents veer to opposite
/// sides. Requires a cone with legs; overlapping pairs go through
/// overlap_recovery_constraint instead.
BoundaryAdjustment closest_boundary_adjustment(const TruncatedCone& cone,
                                               const Vec2& v_rel);

/// One half-plane of permitted velocities for an agent against one other.
struct AvoidanceConstraint {
  HalfPlane halfplane;
  Vec2 w;
  int source_agent = -1;
};

/// Half-plane {v : (v - (vA + w/2)) . n >= 0} with (w, n) taken at
/// vA - vB. The half correction encodes shared responsibility between the
/// two agents. Both arguments are preferred velocities (own, and the
/// estimate of the peer's).
AvoidanceConstraint orca_halfplane(const TruncatedCone& cone, const Vec2& vA,
                                   const Vec2& vB, int source_agent = -1);

/// Constraint for agents already in overlap (|xB - xA| <= rA + rB), where
/// the cone legs are undefined. Built from the disc
/// D((xB - xA)/dt_recover, (rA + rB - |xB - xA|)/dt_recover), which pushes
/// the pair apart along the center line within one recovery step.
AvoidanceConstraint overlap_recovery_constraint(const Vec2& xA, const Vec2& xB,
                                                double rA, double rB,
                                                double dt_recover,
                                                const Vec2& vA, const Vec2& vB,
                                                int source_agent = -1);

/// Velocity chosen from the permitted set, and whether that set was
/// non-empty. On an empty intersection the velocity minimizes the maximum
/// constraint violation inside the speed disc instead.
struct PermittedVelocity {
  Vec2 velocity;
  bool feasible = true;
};

/// Nearest velocity to v_pref inside D(0, v_max) intersected with all
/// half-planes. Solved exactly by an incremental two-dimensional linear
/// program with the quadratic nearest-point objective: start from the
/// disc-clamped preference, process constraints by decreasing violation,
/// and re-project onto each newly violated constraint boundary subject to
/// those already processed.
PermittedVelocity permitted_velocity(std::span<const HalfPlane> constraints,
                                     double v_max, const Vec2& v_pref);
PermittedVelocity permitted_velocity(
    std::span<const AvoidanceConstraint> constraints, double v_max,
    const Vec2& v_pref);

}  // namespace swarmcov
