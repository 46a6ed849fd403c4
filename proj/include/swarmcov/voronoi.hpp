#pragma once

#include <span>
#include <vector>

#include "swarmcov/geom2d.hpp"

namespace swarmcov {

/// Bounded Voronoi tessellation of a convex arena. Cells are index-aligned
/// with the generator list; every non-empty cell is convex, contains its
/// generator, and the cell areas partition the arena.
struct VoronoiDiagram {
  std::vector<ConvexPolygon> cells;
};

/// Computes the cell of every generator by clipping the arena with the
/// perpendicular-bisector half-plane toward that generator against every
/// other generator (O(n^2) per diagram; the swarm sizes handled here make
/// correctness and boundedness worth far more than asymptotics).
///
/// Throws std::invalid_argument for generators closer than kGeomTol
/// (identifying the offending pair) or generators outside the arena.
/// Near-coincident generators are rejected rather than perturbed: the
/// engine guarantees separation, and silent perturbation would mask bugs.
/// Points exactly on a shared bisector are assigned by the >= convention
/// of clip_halfplane, deterministically.
VoronoiDiagram voronoi_cells(std::span<const Vec2> generators,
                             const ConvexPolygon& arena);

}  // namespace swarmcov
