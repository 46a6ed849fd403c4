// Test-only oracles, deliberately independent of the implementation paths
// they check: sampling quadrature, brute-force membership and boundary
// scans, grid-search optimization, finite differences.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "swarmcov/coverage.hpp"
#include "swarmcov/geom2d.hpp"
#include "swarmcov/orca.hpp"

namespace oracles {

using swarmcov::ConvexPolygon;
using swarmcov::HalfPlane;
using swarmcov::Vec2;

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + uniform01(rng) * (hi - lo);
}

// Random convex polygon: an affine image of a circle polygon with sorted,
// well-separated angles.
inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng,
                                           int min_vertices = 3,
                                           int max_vertices = 9) {
  const int n = min_vertices +
                static_cast<int>(uniform01(rng) *
                                 (max_vertices - min_vertices + 1));
  std::vector<double> angles;
  while (true) {
    angles.clear();
    for (int i = 0; i < n; ++i) {
      angles.push_back(uniform(rng, 0.0, 2.0 * M_PI));
    }
    std::sort(angles.begin(), angles.end());
    double min_gap = 2.0 * M_PI + angles.front() - angles.back();
    for (int i = 1; i < n; ++i) {
      min_gap = std::min(min_gap, angles[i] - angles[i - 1]);
    }
    if (min_gap > 0.08) {
      break;
    }
  }
  const double a = uniform(rng, 0.5, 3.0);
  const double b = uniform(rng, 0.5, 3.0);
  const Vec2 center(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
  std::vector<Vec2> vs;
  vs.reserve(angles.size());
  for (double t : angles) {
    vs.push_back(center + Vec2(a * std::cos(t), b * std::sin(t)));
  }
  return ConvexPolygon(vs);
}

inline Vec2 random_point_in(const ConvexPolygon& poly, std::mt19937_64& rng) {
  Vec2 lo = poly.vertices().front();
  Vec2 hi = lo;
  for (const Vec2& v : poly.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  while (true) {
    const Vec2 p(uniform(rng, lo.x(), hi.x()), uniform(rng, lo.y(), hi.y()));
    if (swarmcov::contains(poly, p)) {
      return p;
    }
  }
}

// Monte Carlo quadrature of the second moment about p. The polygon measure
// comes from the hit ratio, not from any shoelace routine.
inline double sampled_moment(const ConvexPolygon& poly, const Vec2& p,
                             int samples, std::uint64_t seed) {
  Vec2 lo = poly.vertices().front();
  Vec2 hi = lo;
  for (const Vec2& v : poly.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  std::mt19937_64 rng(seed);
  const double box_area = (hi.x() - lo.x()) * (hi.y() - lo.y());
  double sum = 0.0;
  long hits = 0;
  for (int i = 0; i < samples; ++i) {
    const Vec2 q(uniform(rng, lo.x(), hi.x()), uniform(rng, lo.y(), hi.y()));
    if (swarmcov::contains(poly, q)) {
      ++hits;
      sum += (p - q).squaredNorm();
    }
  }
  return box_area * sum / static_cast<double>(samples);
}

// Brute-force velocity-obstacle membership: sample collision times densely
// over (0, tau].
inline bool vo_member_sampled(const Vec2& relative_position,
                              double combined_radius, double tau,
                              const Vec2& v, int steps = 10000) {
  for (int i = 1; i <= steps; ++i) {
    const double t = tau * static_cast<double>(i) / steps;
    if ((t * v - relative_position).norm() < combined_radius) {
      return true;
    }
  }
  return false;
}

// Dense scan of the truncated-cone boundary (arc plus both tangent legs),
// rebuilt from the raw pair geometry.
inline Vec2 nearest_boundary_sampled(const Vec2& relative_position,
                                     double combined_radius, double tau,
                                     const Vec2& v_rel, int samples = 40000,
                                     double leg_length = 50.0) {
  const Vec2 c0 = relative_position / tau;
  const double rho = combined_radius / tau;
  const double center_dist = c0.norm();
  const double half = std::asin(std::min(1.0, rho / center_dist));
  const double axis_angle = std::atan2(c0.y(), c0.x());

  Vec2 best = Vec2::Zero();
  double best_dist = std::numeric_limits<double>::infinity();
  const auto consider = [&](const Vec2& q) {
    const double d = (q - v_rel).norm();
    if (d < best_dist) {
      best_dist = d;
      best = q;
    }
  };

  // Arc facing the apex: directions u with angle(u) in
  // [axis + pi/2 + half, axis + 3*pi/2 - half].
  const double arc_lo = axis_angle + M_PI / 2.0 + half;
  const double arc_hi = axis_angle + 3.0 * M_PI / 2.0 - half;
  for (int i = 0; i <= samples; ++i) {
    const double t = arc_lo + (arc_hi - arc_lo) * i / samples;
    consider(c0 + rho * Vec2(std::cos(t), std::sin(t)));
  }
  // Tangent legs from the tangency points outward.
  const double tangent_len = std::sqrt(
      std::max(0.0, center_dist * center_dist - rho * rho));
  for (int side = -1; side <= 1; side += 2) {
    const double leg_angle = axis_angle + side * half;
    const Vec2 dir(std::cos(leg_angle), std::sin(leg_angle));
    for (int i = 0; i <= samples; ++i) {
      consider(dir * (tangent_len + leg_length * i / samples));
    }
  }
  return best;
}

// Exhaustive grid search over the speed disc.
inline std::optional<Vec2> grid_search_velocity(
    std::span<const HalfPlane> constraints, double v_max, const Vec2& v_pref,
    double resolution) {
  const int n = static_cast<int>(std::ceil(v_max / resolution));
  double best_dist2 = std::numeric_limits<double>::infinity();
  std::optional<Vec2> best;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Vec2 v(i * resolution, j * resolution);
      if (v.squaredNorm() > v_max * v_max) {
        continue;
      }
      const double d2 = (v - v_pref).squaredNorm();
      if (d2 >= best_dist2) {
        continue;
      }
      bool ok = true;
      for (const HalfPlane& hp : constraints) {
        if (hp.signed_distance(v) < -1e-12) {
          ok = false;
          break;
        }
      }
      if (ok) {
        best_dist2 = d2;
        best = v;
      }
    }
  }
  return best;
}

// Central finite differences of the coverage cost.
inline std::vector<Vec2> fd_coverage_gradient(std::vector<Vec2> positions,
                                              const ConvexPolygon& arena,
                                              const swarmcov::DensityField& phi,
                                              double h = 1e-5) {
  std::vector<Vec2> grad(positions.size(), Vec2::Zero());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (int axis = 0; axis < 2; ++axis) {
      const double original = positions[i][axis];
      positions[i][axis] = original + h;
      const double up = swarmcov::coverage_cost(positions, arena, phi);
      positions[i][axis] = original - h;
      const double down = swarmcov::coverage_cost(positions, arena, phi);
      positions[i][axis] = original;
      grad[i][axis] = (up - down) / (2.0 * h);
    }
  }
  return grad;
}

// Minimum center distance of two linearly moving points, sampled densely.
inline double min_distance_substeps(const Vec2& xA, const Vec2& vA,
                                    const Vec2& xB, const Vec2& vB,
                                    double horizon, int steps = 100) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double t = horizon * i / steps;
    best = std::min(best, ((xB + t * vB) - (xA + t * vA)).norm());
  }
  return best;
}

// Minimum-total-weight perfect matching between two small point sets, by
// permutation enumeration. Returns the per-pair distances of the optimum.
inline std::vector<double> min_weight_matching(const std::vector<Vec2>& a,
                                               const std::vector<Vec2>& b) {
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> best;
  double best_total = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    std::vector<double> dists;
    dists.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = (a[i] - b[perm[i]]).norm();
      dists.push_back(d);
      total += d;
    }
    if (total < best_total) {
      best_total = total;
      best = std::move(dists);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracles
