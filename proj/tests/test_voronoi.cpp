#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "swarmcov/voronoi.hpp"

using namespace swarmcov;

namespace {

ConvexPolygon unit_square() {
  return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

ConvexPolygon pentagon() {
  return ConvexPolygon({{1.0, 0.0}, {6.0, 0.0}, {8.0, 5.0}, {5.0, 8.0},
                        {0.0, 4.0}});
}

std::vector<Vec2> random_generators(const ConvexPolygon& arena, int n,
                                    std::mt19937_64& rng) {
  std::vector<Vec2> generators;
  while (static_cast<int>(generators.size()) < n) {
    const Vec2 p = oracles::random_point_in(arena, rng);
    bool distinct = true;
    for (const Vec2& q : generators) {
      if ((p - q).norm() < 1e-6) {
        distinct = false;
        break;
      }
    }
    if (distinct) {
      generators.push_back(p);
    }
  }
  return generators;
}

}  // namespace

TEST_CASE("two symmetric generators split the square at x = 0.5") {
  const std::vector<Vec2> generators = {{0.25, 0.5}, {0.75, 0.5}};
  const VoronoiDiagram diagram = voronoi_cells(generators, unit_square());
  REQUIRE(diagram.cells.size() == 2);
  CHECK(polygon_area(diagram.cells[0]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(polygon_area(diagram.cells[1]) == doctest::Approx(0.5).epsilon(1e-12));
  for (const Vec2& v : diagram.cells[0].vertices()) {
    CHECK(v.x() <= 0.5 + 1e-12);
  }
  for (const Vec2& v : diagram.cells[1].vertices()) {
    CHECK(v.x() >= 0.5 - 1e-12);
  }
}

TEST_CASE("single generator owns the whole arena") {
  const std::vector<Vec2> generators = {{3.0, 3.0}};
  const VoronoiDiagram diagram = voronoi_cells(generators, pentagon());
  REQUIRE(diagram.cells.size() == 1);
  CHECK(polygon_area(diagram.cells[0]) ==
        doctest::Approx(polygon_area(pentagon())).epsilon(1e-14));
}

TEST_CASE("four generators partition the pentagon") {
  std::mt19937_64 rng(21);
  const std::vector<Vec2> generators = random_generators(pentagon(), 4, rng);
  const VoronoiDiagram diagram = voronoi_cells(generators, pentagon());
  double total = 0.0;
  for (const ConvexPolygon& cell : diagram.cells) {
    total += polygon_area(cell);
  }
  CHECK(total == doctest::Approx(42.5).epsilon(1e-9));
}

TEST_CASE("errors: duplicates and outside generators") {
  const ConvexPolygon arena = unit_square();
  CHECK_THROWS_WITH_AS(
      voronoi_cells(std::vector<Vec2>{{0.5, 0.5}, {0.5, 0.5}}, arena),
      doctest::Contains("generators 0 and 1"), std::invalid_argument);
  CHECK_THROWS_AS(
      voronoi_cells(std::vector<Vec2>{{0.5, 0.5}, {2.0, 0.5}}, arena),
      std::invalid_argument);
}

TEST_CASE("partition property across sizes 1..20") {
  std::mt19937_64 rng(22);
  const ConvexPolygon arena = pentagon();
  const double arena_area = polygon_area(arena);
  for (int n = 1; n <= 20; ++n) {
    const std::vector<Vec2> generators = random_generators(arena, n, rng);
    const VoronoiDiagram diagram = voronoi_cells(generators, arena);
    double total = 0.0;
    for (const ConvexPolygon& cell : diagram.cells) {
      total += polygon_area(cell);
    }
    CHECK(std::abs(total - arena_area) <= 1e-9 * arena_area);
  }
}

TEST_CASE("generator membership and ownership sampling oracle") {
  std::mt19937_64 rng(23);
  const ConvexPolygon arena = pentagon();
  const std::vector<Vec2> generators = random_generators(arena, 8, rng);
  const VoronoiDiagram diagram = voronoi_cells(generators, arena);

  for (std::size_t i = 0; i < generators.size(); ++i) {
    CHECK(contains(diagram.cells[i], generators[i]));
  }

  int checked = 0;
  for (int s = 0; s < 10000; ++s) {
    const Vec2 q = oracles::random_point_in(arena, rng);
    std::size_t nearest = 0;
    double best = (q - generators[0]).norm();
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < generators.size(); ++i) {
      const double d = (q - generators[i]).norm();
      if (d < best) {
        second = best;
        best = d;
        nearest = i;
      } else {
        second = std::min(second, d);
      }
    }
    if (second - best <= 1e-9) {
      continue;  // tie: bisector ownership is a boundary convention
    }
    ++checked;
    CHECK(contains(diagram.cells[nearest], q));
  }
  CHECK(checked > 9000);
}

TEST_CASE("equidistance of sampled shared boundaries") {
  std::mt19937_64 rng(24);
  const ConvexPolygon arena = pentagon();
  const std::vector<Vec2> generators = random_generators(arena, 5, rng);
  const VoronoiDiagram diagram = voronoi_cells(generators, arena);

  // Cell vertices off the arena boundary are equidistant to the owner and
  // the nearest other generator.
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (const Vec2& v : diagram.cells[i].vertices()) {
      if (distance_to_boundary(arena, v) < 1e-7) {
        continue;
      }
      const double d_own = (v - generators[i]).norm();
      double d_other = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < generators.size(); ++j) {
        if (j != i) {
          d_other = std::min(d_other, (v - generators[j]).norm());
        }
      }
      CHECK(std::abs(d_own - d_other) <= 1e-6);
    }
  }
}

TEST_CASE("permutation equivariance") {
  std::mt19937_64 rng(25);
  const ConvexPolygon arena = pentagon();
  std::vector<Vec2> generators = random_generators(arena, 6, rng);
  const VoronoiDiagram base = voronoi_cells(generators, arena);

  const std::vector<std::size_t> perm = {3, 0, 5, 1, 4, 2};
  std::vector<Vec2> shuffled(generators.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    shuffled[i] = generators[perm[i]];
  }
  const VoronoiDiagram permuted = voronoi_cells(shuffled, arena);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto& a = permuted.cells[i].vertices();
    const auto& b = base.cells[perm[i]].vertices();
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK((a[k] - b[k]).norm() <= 1e-9);
    }
  }
}
