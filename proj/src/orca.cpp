#include "swarmcov/orca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace swarmcov {

namespace {

constexpr double kTieTol = 1e-12;

Vec2 clamp_to_disc(const Vec2& v, double v_max) {
  const double n = v.norm();
  return n > v_max ? Vec2(v * (v_max / n)) : v;
}

}  // namespace

bool TruncatedCone::member(const Vec2& v) const {
  // Solve ||t v - p||^2 < r^2 for t in (0, tau], p = relative_position.
  const Vec2& p = relative_position;
  const double r2 = combined_radius * combined_radius;
  const double c = p.squaredNorm() - r2;
  if (c < 0.0) {
    return true;  // already overlapping: every small t > 0 collides
  }
  const double a = v.squaredNorm();
  if (a == 0.0) {
    return false;
  }
  const double b = v.dot(p);
  if (b <= 0.0) {
    return false;  // moving away from the disc
  }
  const double discriminant = b * b - a * c;
  if (discriminant <= 0.0) {
    return false;  // ray misses the open disc (tangency does not collide)
  }
  const double t_enter = (b - std::sqrt(discriminant)) / a;
  return t_enter < tau;
}

TruncatedCone velocity_obstacle(const Vec2& xA, const Vec2& xB, double rA,
                                double rB, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("velocity_obstacle: tau must be > 0");
  }
  const Vec2 p = xB - xA;
  const double dist = p.norm();
  if (dist == 0.0) {
    throw std::invalid_argument(
        "velocity_obstacle: coincident positions leave the cone axis "
        "undefined");
  }

  TruncatedCone cone;
  cone.tau = tau;
  cone.relative_position = p;
  cone.combined_radius = rA + rB;
  cone.disc_center = p / tau;
  cone.disc_radius = cone.combined_radius / tau;
  // Grazing contact is an equilibrium of reciprocal avoidance, so exact
  // touching must stay on the cone side of the overlap split. Within a
  // 1e-9 shell of touching the legs degenerate continuously to the
  // perpendicular half-plane (half angle 90 degrees).
  cone.has_legs = dist > cone.combined_radius - 1e-9;
  if (cone.has_legs) {
    const double center_dist = cone.disc_center.norm();
    const double sin_half = std::min(1.0, cone.disc_radius / center_dist);
    const double cos_half = std::sqrt(1.0 - sin_half * sin_half);
    const Vec2 axis = cone.disc_center / center_dist;
    cone.leg_left = Vec2(axis.x() * cos_half - axis.y() * sin_half,
                         axis.x() * sin_half + axis.y() * cos_half);
    cone.leg_right = Vec2(axis.x() * cos_half + axis.y() * sin_half,
                          -axis.x() * sin_half + axis.y() * cos_half);
    const double tangent_len = center_dist * cos_half;
    cone.tangent_left = tangent_len * cone.leg_left;
    cone.tangent_right = tangent_len * cone.leg_right;
  }
  return cone;
}

BoundaryAdjustment closest_boundary_adjustment(const TruncatedCone& cone,
                                               const Vec2& v_rel) {
  if (!cone.has_legs) {
    throw std::invalid_argument(
        "closest_boundary_adjustment: overlapping agents have no cone "
        "boundary; use overlap_recovery_constraint");
  }
  const Vec2& c0 = cone.disc_center;
  const double rho = cone.disc_radius;
  const double center_dist = c0.norm();
  const Vec2 axis = c0 / center_dist;

  const Vec2 rel = v_rel - c0;
  const double rel_norm = rel.norm();
  if (rel_norm < kTieTol) {
    // All arc points are equidistant; deterministic tie-break.
    const Vec2 n = perp_ccw(axis);
    return BoundaryAdjustment{c0 + rho * n - v_rel, n};
  }

  // The truncation arc covers directions u (from the disc center) with
  // u . axis <= -sin(half_angle); beyond that the tangent legs take over.
  const double sin_half = std::min(1.0, rho / center_dist);
  const Vec2 u = rel / rel_norm;

  double best_dist = std::numeric_limits<double>::infinity();
  Vec2 best_point = Vec2::Zero();
  Vec2 best_normal = Vec2::Zero();

  if (u.dot(axis) <= -sin_half) {
    best_dist = std::abs(rel_norm - rho);
    best_point = c0 + rho * u;
    best_normal = u;
  }
  const Vec2 starts[2] = {cone.tangent_left, cone.tangent_right};
  const Vec2 dirs[2] = {cone.leg_left, cone.leg_right};
  for (int s = 0; s < 2; ++s) {
    const double t = std::max(0.0, (v_rel - starts[s]).dot(dirs[s]));
    const Vec2 q = starts[s] + t * dirs[s];
    const double d = (v_rel - q).norm();
    if (d < best_dist) {
      best_dist = d;
      best_point = q;
      best_normal = (starts[s] - c0) / rho;
    }
  }
  return BoundaryAdjustment{best_point - v_rel, best_normal};
}

AvoidanceConstraint orca_halfplane(const TruncatedCone& cone, const Vec2& vA,
                                   const Vec2& vB, int source_agent) {
  const BoundaryAdjustment adj = closest_boundary_adjustment(cone, vA - vB);
  return AvoidanceConstraint{
      HalfPlane{vA + 0.5 * adj.w, adj.normal}, adj.w, source_agent};
}

AvoidanceConstraint overlap_recovery_constraint(const Vec2& xA, const Vec2& xB,
                                                double rA, double rB,
                                                double dt_recover,
                                                const Vec2& vA, const Vec2& vB,
                                                int source_agent) {
  if (!(dt_recover > 0.0)) {
    throw std::invalid_argument(
        "overlap_recovery_constraint: dt_recover must be > 0");
  }
  const Vec2 p = xB - xA;
  const double dist = p.norm();
  const double sum_r = rA + rB;
  if (dist > sum_r) {
    throw std::invalid_argument(
        "overlap_recovery_constraint: agents are not overlapping");
  }
  const Vec2 center = p / dt_recover;
  const double rho = (sum_r - dist) / dt_recover;
  const Vec2 axis = dist < kTieTol ? Vec2(1.0, 0.0) : Vec2(p / dist);

  const Vec2 v_rel = vA - vB;
  const Vec2 rel = v_rel - center;
  const double rel_norm = rel.norm();
  const Vec2 n = rel_norm < kTieTol ? perp_ccw(axis) : Vec2(rel / rel_norm);
  const Vec2 w = center + rho * n - v_rel;
  return AvoidanceConstraint{HalfPlane{vA + 0.5 * w, n}, w, source_agent};
}

namespace {

// One-dimensional program on the boundary line of hps[index], subject to
// the speed disc and the constraints already processed (hps[order[m]] for
// m < upto). Minimizes |v - opt| along the line, or maximizes opt . v when
// direction_opt is set. Returns nullopt when the line has no feasible
// segment.
std::optional<Vec2> solve_on_line(std::span<const HalfPlane> hps,
                                  std::span<const std::size_t> order,
                                  std::size_t upto, std::size_t index,
                                  double v_max, const Vec2& opt,
                                  bool direction_opt) {
  const Vec2& pi = hps[index].point;
  const Vec2& ni = hps[index].normal;
  const Vec2 di = perp_ccw(ni);

  const double b = pi.dot(di);
  const double discriminant = b * b + v_max * v_max - pi.squaredNorm();
  if (discriminant < 0.0) {
    return std::nullopt;  // boundary line misses the speed disc entirely
  }
  const double root = std::sqrt(discriminant);
  double t_left = -b - root;
  double t_right = -b + root;

  for (std::size_t m = 0; m < upto; ++m) {
    const HalfPlane& hj = hps[order[m]];
    const double denom = di.dot(hj.normal);
    const double rhs = (hj.point - pi).dot(hj.normal);
    if (std::abs(denom) < 1e-12) {
      if (rhs > 0.0) {
        return std::nullopt;  // parallel and fully on the forbidden side
      }
      continue;
    }
    const double t = rhs / denom;
    if (denom > 0.0) {
      t_left = std::max(t_left, t);
    } else {
      t_right = std::min(t_right, t);
    }
    if (t_left > t_right) {
      return std::nullopt;
    }
  }

  double t_star;
  if (direction_opt) {
    t_star = di.dot(opt) > 0.0 ? t_right : t_left;
  } else {
    t_star = std::clamp((opt - pi).dot(di), t_left, t_right);
  }
  return pi + t_star * di;
}

// Fallback for an empty permitted set: the velocity inside the speed disc
// minimizing the maximum constraint violation, found by progressively
// equalizing violations (the relaxed counterpart of the incremental
// program above).
Vec2 least_violating_velocity(std::span<const HalfPlane> hps,
                              std::span<const std::size_t> order,
                              std::size_t begin, double v_max, Vec2 v) {
  double worst = 0.0;
  for (std::size_t k = begin; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (-hps[i].signed_distance(v) <= worst) {
      continue;
    }
    std::vector<HalfPlane> proj;
    proj.reserve(k);
    for (std::size_t m = 0; m < k; ++m) {
      const std::size_t j = order[m];
      // Keep violation of j at or below violation of i:
      // v . (n_j - n_i) >= p_j . n_j - p_i . n_i.
      const Vec2 dn = hps[j].normal - hps[i].normal;
      const double dn_norm = dn.norm();
      if (dn_norm < 1e-9) {
        continue;  // identical normals: relative violation is constant
      }
      const Vec2 m_hat = dn / dn_norm;
      const double offset =
          (hps[j].point.dot(hps[j].normal) - hps[i].point.dot(hps[i].normal)) /
          dn_norm;
      proj.push_back(HalfPlane{offset * m_hat, m_hat});
    }

    std::vector<std::size_t> proj_order(proj.size());
    std::iota(proj_order.begin(), proj_order.end(), std::size_t{0});
    Vec2 candidate = v_max * hps[i].normal;
    bool ok = true;
    for (std::size_t q = 0; q < proj.size(); ++q) {
      if (proj[q].signed_distance(candidate) < 0.0) {
        const std::optional<Vec2> r = solve_on_line(
            proj, proj_order, q, q, v_max, hps[i].normal, true);
        if (!r) {
          ok = false;
          break;
        }
        candidate = *r;
      }
    }
    if (ok) {
      v = candidate;
    }
    worst = -hps[i].signed_distance(v);
  }
  return v;
}

}  // namespace

PermittedVelocity permitted_velocity(std::span<const HalfPlane> constraints,
                                     double v_max, const Vec2& v_pref) {
  if (!(v_max > 0.0)) {
    throw std::invalid_argument("permitted_velocity: v_max must be > 0");
  }
  Vec2 v = clamp_to_disc(v_pref, v_max);

  std::vector<std::size_t> order(constraints.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> violation(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    violation[i] = -constraints[i].signed_distance(v);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return violation[a] > violation[b];
                   });

  bool feasible = true;
  std::size_t failed_at = order.size();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (constraints[i].signed_distance(v) < 0.0) {
      const std::optional<Vec2> r =
          solve_on_line(constraints, order, k, i, v_max, v_pref, false);
      if (!r) {
        feasible = false;
        failed_at = k;
        break;
      }
      v = *r;
    }
  }
  if (!feasible) {
    v = least_violating_velocity(constraints, order, failed_at, v_max, v);
  }
  return PermittedVelocity{clamp_to_disc(v, v_max), feasible};
}

PermittedVelocity permitted_velocity(
    std::span<const AvoidanceConstraint> constraints, double v_max,
    const Vec2& v_pref) {
  std::vector<HalfPlane> hps;
  hps.reserve(constraints.size());
  for (const AvoidanceConstraint& c : constraints) {
    hps.push_back(c.halfplane);
  }
  return permitted_velocity(std::span<const HalfPlane>(hps), v_max, v_pref);
}

}  // namespace swarmcov
