#include "swarmcov/voronoi.hpp"

#include <sstream>
#include <stdexcept>

namespace swarmcov {

VoronoiDiagram voronoi_cells(std::span<const Vec2> generators,
                             const ConvexPolygon& arena) {
  const std::size_t n = generators.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(arena, generators[i])) {
      std::ostringstream os;
      os << "voronoi_cells: generator " << i << " at (" << generators[i].x()
         << ", " << generators[i].y() << ") lies outside the arena";
      throw std::invalid_argument(os.str());
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((generators[j] - generators[i]).norm() <= kGeomTol) {
        std::ostringstream os;
        os << "voronoi_cells: generators " << i << " and " << j
           << " coincide within tolerance";
        throw std::invalid_argument(os.str());
      }
    }
  }

  VoronoiDiagram diagram;
  diagram.cells.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ConvexPolygon cell = arena;
    for (std::size_t j = 0; j < n && !cell.is_empty(); ++j) {
      if (j == i) {
        continue;
      }
      const Vec2 mid = 0.5 * (generators[i] + generators[j]);
      cell = clip_halfplane(
          cell, HalfPlane::through(mid, generators[i] - generators[j]));
    }
    diagram.cells.push_back(std::move(cell));
  }
  return diagram;
}

}  // namespace swarmcov
