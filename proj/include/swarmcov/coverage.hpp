#pragma once

#include <span>
#include <vector>

#include "swarmcov/geom2d.hpp"

namespace swarmcov {

/// Density over the arena, weighting the priority of coverage. Only the
/// uniform case is implemented; the type exists so a general field can be
/// added later without touching any interface.
class DensityField {
 public:
  enum class Kind { Uniform };

  static DensityField uniform(double value);

  Kind kind() const { return kind_; }
  double value() const { return value_; }

 private:
  DensityField(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

/// Cost, cell masses, and cell centers of mass for one generator set.
struct CoverageReport {
  double cost = 0.0;
  std::vector<double> masses;
  std::vector<Vec2> centroids;
};

/// Mass of a cell under the density field: phi * area for uniform phi.
double cell_mass(const ConvexPolygon& cell, const DensityField& phi);

/// Center of mass of a cell. For uniform phi this is the area centroid
/// (the density cancels). Throws std::invalid_argument on degenerate cells.
Vec2 cell_center_of_mass(const ConvexPolygon& cell, const DensityField& phi);

/// Coverage cost of a configuration: the integral over the arena of the
/// squared distance to the nearest agent, weighted by density. The
/// nearest-agent map is realized by integrating over each agent's own
/// Voronoi cell; the diagram is recomputed internally so cost and cells can
/// never disagree.
double coverage_cost(std::span<const Vec2> positions,
                     const ConvexPolygon& arena, const DensityField& phi);

/// Analytic gradient of coverage_cost: component j is
/// 2 * mass_j * (x_j - center_of_mass_j). Zero exactly at a centroidal
/// Voronoi configuration.
std::vector<Vec2> coverage_gradient(std::span<const Vec2> positions,
                                    const ConvexPolygon& arena,
                                    const DensityField& phi);

/// Cost, masses, and centroids in one pass over the diagram.
CoverageReport evaluate_coverage(std::span<const Vec2> positions,
                                 const ConvexPolygon& arena,
                                 const DensityField& phi);

/// Lloyd control input: gain * (center_of_mass - position). Agents slow
/// down as they approach their goal.
Vec2 lloyd_velocity(const Vec2& position, const Vec2& center_of_mass,
                    double gain);

}  // namespace swarmcov
