#include "swarmcov/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace swarmcov {

namespace {

// Merge threshold for consecutive vertices emitted by the clipper. Kept
// well below kGeomTol so merging never moves geometry by a testable amount.
constexpr double kMergeTol = 1e-12;

std::vector<Vec2> merge_consecutive(std::vector<Vec2> vs) {
  std::vector<Vec2> out;
  out.reserve(vs.size());
  for (const Vec2& v : vs) {
    if (out.empty() || (v - out.back()).norm() > kMergeTol) {
      out.push_back(v);
    }
  }
  while (out.size() >= 2 && (out.front() - out.back()).norm() <= kMergeTol) {
    out.pop_back();
  }
  return out;
}

// Exact second moment of triangle (a, b, c) about the point p:
// integral of ||q - p||^2 over the triangle, signed by orientation.
double triangle_moment(const Vec2& a, const Vec2& b, const Vec2& c,
                       const Vec2& p) {
  const Vec2 u = a - p;
  const Vec2 v = b - p;
  const Vec2 w = c - p;
  const double signed_area = 0.5 * cross2(v - u, w - u);
  return signed_area / 6.0 *
         (u.squaredNorm() + v.squaredNorm() + w.squaredNorm() + u.dot(v) +
          v.dot(w) + w.dot(u));
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) {
    return (p - a).norm();
  }
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

HalfPlane HalfPlane::through(const Vec2& point, const Vec2& toward) {
  const double n = toward.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("HalfPlane: zero or non-finite direction");
  }
  return HalfPlane{point, toward / n};
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) {
    throw std::invalid_argument("ConvexPolygon: fewer than 3 vertices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!vertices[i].allFinite()) {
      std::ostringstream os;
      os << "ConvexPolygon: non-finite vertex " << i;
      throw std::invalid_argument(os.str());
    }
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    if ((b - a).norm() <= kGeomTol) {
      std::ostringstream os;
      os << "ConvexPolygon: vertices " << i << " and " << (i + 1) % n
         << " are closer than tolerance";
      throw std::invalid_argument(os.str());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    const Vec2& c = vertices[(i + 2) % n];
    if (cross2(b - a, c - b) < -kGeomTol) {
      std::ostringstream os;
      os << "ConvexPolygon: reflex vertex " << (i + 1) % n << " at ("
         << b.x() << ", " << b.y() << ") breaks counterclockwise convexity";
      throw std::invalid_argument(os.str());
    }
  }
  vertices_ = std::move(vertices);
}

ConvexPolygon ConvexPolygon::unchecked(std::vector<Vec2> vertices) {
  ConvexPolygon poly;
  std::vector<Vec2> cleaned = merge_consecutive(std::move(vertices));
  if (cleaned.size() >= 3) {
    poly.vertices_ = std::move(cleaned);
  }
  return poly;
}

ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const HalfPlane& hp) {
  if (poly.is_empty()) {
    return poly;
  }
  // Vertices within kMergeTol of the boundary line count as on it and are
  // kept without generating a crossing; re-clipping is then a fixed point
  // even though intersection vertices re-evaluate a few ulps off the line.
  const std::vector<Vec2>& vs = poly.vertices();
  const std::size_t n = vs.size();
  std::vector<Vec2> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % n];
    const double da = hp.signed_distance(a);
    const double db = hp.signed_distance(b);
    if (da >= -kMergeTol) {
      out.push_back(a);
    }
    if ((da > kMergeTol && db < -kMergeTol) ||
        (da < -kMergeTol && db > kMergeTol)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return ConvexPolygon::unchecked(std::move(out));
}

double polygon_area(const ConvexPolygon& poly) {
  const std::vector<Vec2>& vs = poly.vertices();
  const std::size_t n = vs.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross2(vs[i], vs[(i + 1) % n]);
  }
  return 0.5 * twice;
}

std::optional<Vec2> polygon_centroid(const ConvexPolygon& poly) {
  const std::vector<Vec2>& vs = poly.vertices();
  const std::size_t n = vs.size();
  if (n < 3) {
    return std::nullopt;
  }
  double twice_area = 0.0;
  Vec2 acc = Vec2::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % n];
    const double cr = cross2(a, b);
    twice_area += cr;
    acc += (a + b) * cr;
  }
  if (twice_area <= 1e-15) {
    // Anything this close to zero area is a degenerate sliver; the division
    // below would amplify rounding noise into a meaningless point.
    return std::nullopt;
  }
  return acc / (3.0 * twice_area);
}

double quadratic_moment(const ConvexPolygon& poly, const Vec2& p) {
  const std::optional<Vec2> c = polygon_centroid(poly);
  if (!c) {
    return 0.0;
  }
  const std::vector<Vec2>& vs = poly.vertices();
  const std::size_t n = vs.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += triangle_moment(*c, vs[i], vs[(i + 1) % n], p);
  }
  return total;
}

bool contains(const ConvexPolygon& poly, const Vec2& p) {
  const std::vector<Vec2>& vs = poly.vertices();
  const std::size_t n = vs.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % n];
    if (cross2(b - a, p - a) < -kGeomTol) {
      return false;
    }
  }
  return true;
}

double distance_to_boundary(const ConvexPolygon& poly, const Vec2& p) {
  if (!contains(poly, p)) {
    throw std::invalid_argument(
        "distance_to_boundary: point lies outside the polygon");
  }
  const std::vector<Vec2>& vs = poly.vertices();
  const std::size_t n = vs.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, vs[i], vs[(i + 1) % n]));
  }
  return best;
}

}  // namespace swarmcov
