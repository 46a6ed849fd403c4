#include "swarmcov/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace swarmcov {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(where, "unknown key \"" + key + "\"");
    }
  }
}

double number_at(const json& obj, const std::string& where, const char* key,
                 double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj[key].is_number()) {
    fail(where + "." + key, "expected a number");
  }
  return obj[key].get<double>();
}

std::vector<Vec2> parse_points(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty()) {
    fail(where, "expected a non-empty array of [x, y] pairs");
  }
  std::vector<Vec2> points;
  points.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      std::ostringstream os;
      os << where << "[" << i << "]";
      fail(os.str(), "expected [x, y]");
    }
    const Vec2 v(p[0].get<double>(), p[1].get<double>());
    if (!v.allFinite()) {
      std::ostringstream os;
      os << where << "[" << i << "]";
      fail(os.str(), "coordinates must be finite");
    }
    points.push_back(v);
  }
  return points;
}

ConvexPolygon parse_convex(const json& arr, const std::string& where) {
  const std::vector<Vec2> vs = parse_points(arr, where);
  if (vs.size() < 3) {
    fail(where, "a polygon needs at least 3 vertices");
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % vs.size()];
    const Vec2& c = vs[(i + 2) % vs.size()];
    if (cross2(b - a, c - b) < -kGeomTol) {
      std::ostringstream os;
      os << where << ": reflex vertex " << (i + 1) % vs.size() << " at ("
         << b.x() << ", " << b.y()
         << ") makes the polygon non-convex (vertices must be "
            "counterclockwise)";
      throw ScenarioError(os.str());
    }
  }
  try {
    return ConvexPolygon(vs);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

json points_to_json(const std::vector<Vec2>& points) {
  json arr = json::array();
  for (const Vec2& p : points) {
    arr.push_back(json::array({p.x(), p.y()}));
  }
  return arr;
}

}  // namespace

bool operator==(const SwarmSpec& a, const SwarmSpec& b) {
  const auto region_vertices = [](const SwarmSpec& s) {
    return s.region ? s.region->vertices() : std::vector<Vec2>{};
  };
  return a.positions == b.positions &&
         region_vertices(a) == region_vertices(b) && a.count == b.count;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.arena.vertices() == b.arena.vertices() && a.swarms == b.swarms &&
         a.radius == b.radius && a.gain == b.gain && a.v_max == b.v_max &&
         a.dt == b.dt && a.tau == b.tau && a.max_iters == b.max_iters &&
         a.eps == b.eps && a.avoidance == b.avoidance && a.seed == b.seed;
}

Scenario load_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    fail("scenario", "top level must be an object");
  }
  reject_unknown_keys(doc, "scenario", {"arena", "swarms", "agent", "sim"});
  if (!doc.contains("arena") || !doc.contains("swarms")) {
    fail("scenario", "\"arena\" and \"swarms\" are required");
  }

  Scenario s;

  const json& arena = doc["arena"];
  if (!arena.is_object()) {
    fail("arena", "expected an object");
  }
  reject_unknown_keys(arena, "arena", {"vertices"});
  if (!arena.contains("vertices")) {
    fail("arena", "\"vertices\" is required");
  }
  s.arena = parse_convex(arena["vertices"], "arena.vertices");

  if (doc.contains("agent")) {
    const json& agent = doc["agent"];
    if (!agent.is_object()) {
      fail("agent", "expected an object");
    }
    reject_unknown_keys(agent, "agent", {"radius", "gain", "v_max"});
    s.radius = number_at(agent, "agent", "radius", s.radius);
    s.gain = number_at(agent, "agent", "gain", s.gain);
    s.v_max = number_at(agent, "agent", "v_max", s.v_max);
  }
  if (!(s.radius > 0.0)) fail("agent.radius", "must be > 0");
  if (!(s.gain > 0.0)) fail("agent.gain", "must be > 0");
  if (!(s.v_max > 0.0)) fail("agent.v_max", "must be > 0");

  if (doc.contains("sim")) {
    const json& sim = doc["sim"];
    if (!sim.is_object()) {
      fail("sim", "expected an object");
    }
    reject_unknown_keys(sim, "sim",
                        {"dt", "tau", "max_iters", "eps", "avoidance", "seed"});
    s.dt = number_at(sim, "sim", "dt", s.dt);
    s.tau = number_at(sim, "sim", "tau", s.dt);
    if (sim.contains("max_iters")) {
      if (!sim["max_iters"].is_number_integer()) {
        fail("sim.max_iters", "expected an integer");
      }
      s.max_iters = sim["max_iters"].get<long>();
    }
    s.eps = number_at(sim, "sim", "eps", s.eps);
    if (sim.contains("avoidance")) {
      if (!sim["avoidance"].is_boolean()) {
        fail("sim.avoidance", "expected a boolean");
      }
      s.avoidance = sim["avoidance"].get<bool>();
    }
    if (sim.contains("seed")) {
      if (!sim["seed"].is_number_unsigned() &&
          !sim["seed"].is_number_integer()) {
        fail("sim.seed", "expected a non-negative integer");
      }
      s.seed = sim["seed"].get<std::uint64_t>();
    }
  } else {
    s.tau = s.dt;
  }
  if (!(s.dt > 0.0)) fail("sim.dt", "must be > 0");
  if (!(s.tau > 0.0)) fail("sim.tau", "must be > 0");
  if (s.max_iters < 1) fail("sim.max_iters", "must be >= 1");
  if (!(s.eps > 0.0)) fail("sim.eps", "must be > 0");

  const json& swarms = doc["swarms"];
  if (!swarms.is_array() || swarms.empty()) {
    fail("swarms", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < swarms.size(); ++i) {
    std::ostringstream where;
    where << "swarms[" << i << "]";
    const json& sw = swarms[i];
    if (!sw.is_object()) {
      fail(where.str(), "expected an object");
    }
    reject_unknown_keys(sw, where.str(), {"positions", "region", "count"});
    SwarmSpec spec;
    if (sw.contains("positions")) {
      if (sw.contains("region") || sw.contains("count")) {
        fail(where.str(),
             "\"positions\" excludes \"region\" and \"count\"");
      }
      spec.positions = parse_points(sw["positions"], where.str() + ".positions");
    } else {
      if (!sw.contains("region") || !sw.contains("count")) {
        fail(where.str(), "either \"positions\" or \"region\" + \"count\"");
      }
      spec.region = parse_convex(sw["region"], where.str() + ".region");
      if (!sw["count"].is_number_integer() || sw["count"].get<long>() < 1) {
        fail(where.str() + ".count", "expected a positive integer");
      }
      spec.count = sw["count"].get<int>();
      for (std::size_t v = 0; v < spec.region->vertices().size(); ++v) {
        if (!contains(s.arena, spec.region->vertices()[v])) {
          std::ostringstream os;
          os << where.str() << ".region[" << v << "]";
          fail(os.str(), "sampling region must lie inside the arena");
        }
      }
    }
    s.swarms.push_back(std::move(spec));
  }

  // Explicit positions must keep the same clearances the sampler enforces:
  // twice the radius from the arena boundary and from every other agent.
  std::vector<std::pair<std::size_t, Vec2>> placed;
  for (std::size_t i = 0; i < s.swarms.size(); ++i) {
    for (std::size_t j = 0; j < s.swarms[i].positions.size(); ++j) {
      const Vec2& p = s.swarms[i].positions[j];
      std::ostringstream where;
      where << "swarms[" << i << "].positions[" << j << "]";
      if (!contains(s.arena, p)) {
        fail(where.str(), "outside the arena");
      }
      if (distance_to_boundary(s.arena, p) < 2.0 * s.radius) {
        fail(where.str(), "closer than 2*radius to the arena boundary");
      }
      for (const auto& [other_swarm, q] : placed) {
        if ((p - q).norm() < 2.0 * s.radius) {
          std::ostringstream os;
          os << "closer than 2*radius to another agent (swarm "
             << other_swarm << ")";
          fail(where.str(), os.str());
        }
      }
      placed.emplace_back(i, p);
    }
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open scenario file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["arena"]["vertices"] = points_to_json(s.arena.vertices());
  doc["agent"] = {{"radius", s.radius}, {"gain", s.gain}, {"v_max", s.v_max}};
  doc["sim"] = {{"dt", s.dt},           {"tau", s.tau},
                {"max_iters", s.max_iters}, {"eps", s.eps},
                {"avoidance", s.avoidance}, {"seed", s.seed}};
  doc["swarms"] = json::array();
  for (const SwarmSpec& spec : s.swarms) {
    json sw;
    if (spec.has_explicit_positions()) {
      sw["positions"] = points_to_json(spec.positions);
    } else {
      sw["region"] = points_to_json(spec.region->vertices());
      sw["count"] = spec.count;
    }
    doc["swarms"].push_back(std::move(sw));
  }
  return doc.dump(2);
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<Vec2> sample_initial_positions(const ConvexPolygon& region,
                                           const ConvexPolygon& arena, int n,
                                           double radius, std::uint64_t seed,
                                           std::span<const Vec2> placed) {
  if (region.is_empty()) {
    throw ScenarioError("sample_initial_positions: empty region");
  }
  for (const Vec2& v : region.vertices()) {
    if (!contains(arena, v)) {
      throw ScenarioError(
          "sample_initial_positions: region must lie inside the arena");
    }
  }

  Vec2 lo = region.vertices().front();
  Vec2 hi = lo;
  for (const Vec2& v : region.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }

  std::mt19937_64 rng(seed);
  const auto uniform01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  const double clearance = 2.0 * radius;
  std::vector<Vec2> accepted;
  accepted.reserve(static_cast<std::size_t>(n));
  constexpr int kBudget = 100000;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    if (static_cast<int>(accepted.size()) == n) {
      return accepted;
    }
    const Vec2 p(lo.x() + uniform01() * (hi.x() - lo.x()),
                 lo.y() + uniform01() * (hi.y() - lo.y()));
    if (!contains(region, p)) {
      continue;
    }
    if (distance_to_boundary(arena, p) < clearance) {
      continue;
    }
    bool clear = true;
    for (const Vec2& q : accepted) {
      if ((p - q).norm() < clearance) {
        clear = false;
        break;
      }
    }
    for (std::size_t i = 0; clear && i < placed.size(); ++i) {
      clear = (p - placed[i]).norm() >= clearance;
    }
    if (clear) {
      accepted.push_back(p);
    }
  }
  if (static_cast<int>(accepted.size()) == n) {
    return accepted;
  }
  std::ostringstream os;
  os << "sample_initial_positions: rejection budget exhausted after "
     << kBudget << " attempts (" << accepted.size() << " of " << n
     << " points placed); the packing is likely infeasible";
  throw ScenarioError(os.str());
}

}  // namespace swarmcov
