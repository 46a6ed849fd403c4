#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace swarmcov {

using Vec2 = Eigen::Vector2d;

/// Degeneracy tolerance, in area units, for collinearity and containment
/// tests. The arenas handled here span a few units, so double precision
/// leaves ample headroom at this scale.
inline constexpr double kGeomTol = 1e-9;

/// 2D cross product (z component of the 3D cross product).
inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Counterclockwise perpendicular: rotates v by +90 degrees.
inline Vec2 perp_ccw(const Vec2& v) { return Vec2(-v.y(), v.x()); }

/// A half-plane {p : (p - point) . normal >= 0}. The normal is unit length
/// and points into the permitted side.
struct HalfPlane {
  Vec2 point;
  Vec2 normal;

  /// Builds a half-plane through `point` whose permitted side lies in the
  /// (not necessarily unit) direction `toward`.
  static HalfPlane through(const Vec2& point, const Vec2& toward);

  double signed_distance(const Vec2& p) const {
    return normal.dot(p - point);
  }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return signed_distance(p) >= -tol;
  }
};

/// Convex polygon stored as a counterclockwise vertex list. The empty
/// polygon (no vertices) is a first-class value so half-plane clipping
/// cascades need no special cases.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Validates the vertex list: finite coordinates, at least 3 vertices,
  /// consecutive vertices more than kGeomTol apart, counterclockwise and
  /// convex (every consecutive-edge cross product >= -kGeomTol).
  /// Throws std::invalid_argument naming the offending vertex otherwise.
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  /// Wraps an already-clean vertex list produced by clipping. Merges
  /// consecutive near-duplicate vertices and collapses to empty below
  /// 3 vertices; skips the convexity validation.
  static ConvexPolygon unchecked(std::vector<Vec2> vertices);

  bool is_empty() const { return vertices_.empty(); }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vec2>& vertices() const { return vertices_; }

 private:
  std::vector<Vec2> vertices_;
};

/// Intersection of `poly` with the permitted side of `hp`. Vertices exactly
/// on the boundary line are kept (the >= convention). The result is convex
/// or empty; clipping never increases area.
ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const HalfPlane& hp);

/// Shoelace area; 0 for the empty polygon.
double polygon_area(const ConvexPolygon& poly);

/// Area centroid, or nullopt for a degenerate (zero-area or empty) polygon.
std::optional<Vec2> polygon_centroid(const ConvexPolygon& poly);

/// Exact integral of ||p - q||^2 over the polygon, computed by fan
/// triangulation from the centroid with the closed-form second moment of
/// each triangle. 0 for the empty polygon.
double quadratic_moment(const ConvexPolygon& poly, const Vec2& p);

/// Point-in-polygon test with tolerance kGeomTol; boundary points count as
/// inside.
bool contains(const ConvexPolygon& poly, const Vec2& p);

/// Minimum distance from an interior point to the polygon boundary.
/// Throws std::invalid_argument if p lies outside the polygon.
double distance_to_boundary(const ConvexPolygon& poly, const Vec2& p);

}  // namespace swarmcov
