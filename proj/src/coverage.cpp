#include "swarmcov/coverage.hpp"

#include <stdexcept>

#include "swarmcov/voronoi.hpp"

namespace swarmcov {

DensityField DensityField::uniform(double value) {
  if (!(value > 0.0)) {
    throw std::invalid_argument("DensityField: uniform value must be > 0");
  }
  return DensityField(Kind::Uniform, value);
}

double cell_mass(const ConvexPolygon& cell, const DensityField& phi) {
  return phi.value() * polygon_area(cell);
}

Vec2 cell_center_of_mass(const ConvexPolygon& cell, const DensityField& phi) {
  (void)phi;  // uniform density cancels out of the ratio
  const std::optional<Vec2> c = polygon_centroid(cell);
  if (!c) {
    throw std::invalid_argument(
        "cell_center_of_mass: degenerate cell has no center of mass");
  }
  return *c;
}

double coverage_cost(std::span<const Vec2> positions,
                     const ConvexPolygon& arena, const DensityField& phi) {
  const VoronoiDiagram diagram = voronoi_cells(positions, arena);
  double cost = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    cost += phi.value() * quadratic_moment(diagram.cells[i], positions[i]);
  }
  return cost;
}

std::vector<Vec2> coverage_gradient(std::span<const Vec2> positions,
                                    const ConvexPolygon& arena,
                                    const DensityField& phi) {
  const VoronoiDiagram diagram = voronoi_cells(positions, arena);
  std::vector<Vec2> grad;
  grad.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double mass = cell_mass(diagram.cells[i], phi);
    const Vec2 cm = cell_center_of_mass(diagram.cells[i], phi);
    grad.push_back(2.0 * mass * (positions[i] - cm));
  }
  return grad;
}

CoverageReport evaluate_coverage(std::span<const Vec2> positions,
                                 const ConvexPolygon& arena,
                                 const DensityField& phi) {
  const VoronoiDiagram diagram = voronoi_cells(positions, arena);
  CoverageReport report;
  report.masses.reserve(positions.size());
  report.centroids.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    report.cost += phi.value() * quadratic_moment(diagram.cells[i], positions[i]);
    report.masses.push_back(cell_mass(diagram.cells[i], phi));
    report.centroids.push_back(cell_center_of_mass(diagram.cells[i], phi));
  }
  return report;
}

Vec2 lloyd_velocity(const Vec2& position, const Vec2& center_of_mass,
                    double gain) {
  return gain * (center_of_mass - position);
}

}  // namespace swarmcov
