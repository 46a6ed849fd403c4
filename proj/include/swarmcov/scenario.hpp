#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmcov/geom2d.hpp"

namespace swarmcov {

/// Error in a scenario document: parse failure, unknown key, or an
/// invariant violation. The message carries the offending key or value.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One swarm: either explicit initial positions, or a sampling region with
/// an agent count.
struct SwarmSpec {
  std::vector<Vec2> positions;          // explicit placement when non-empty
  std::optional<ConvexPolygon> region;  // otherwise sampled from here
  int count = 0;

  bool has_explicit_positions() const { return !positions.empty(); }
  int agent_count() const {
    return has_explicit_positions() ? static_cast<int>(positions.size())
                                    : count;
  }
};

struct Scenario {
  ConvexPolygon arena;
  std::vector<SwarmSpec> swarms;
  double radius = 0.2;
  double gain = 1.0;
  double v_max = 3.0;
  double dt = 0.1;
  double tau = 0.1;  // defaults to dt when the document omits it
  long max_iters = 1000;
  double eps = 1e-3;
  bool avoidance = true;
  std::uint64_t seed = 0;
};

bool operator==(const SwarmSpec& a, const SwarmSpec& b);
bool operator==(const Scenario& a, const Scenario& b);

/// Parses and validates a scenario document (JSON). Unknown keys are
/// rejected; explicit positions must keep the clearance rule below.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Document that load_scenario parses back to an equal Scenario.
std::string serialize_scenario(const Scenario& s);

/// n points uniform in `region` by rejection sampling, keeping every point
/// at least 2*radius from the arena boundary and all points pairwise at
/// least 2*radius apart (the clearance is one own radius plus one peer
/// radius). Points in `placed` — agents of swarms positioned earlier —
/// count toward the pairwise rule too. Deterministic for a given seed.
/// Throws ScenarioError once the total attempt budget (1e5 draws) is
/// exhausted.
std::vector<Vec2> sample_initial_positions(
    const ConvexPolygon& region, const ConvexPolygon& arena, int n,
    double radius, std::uint64_t seed,
    std::span<const Vec2> placed = std::span<const Vec2>());

/// 64-bit finalizer used to derive independent seeds (splittable counter
/// streams: mix(master + index)).
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace swarmcov
