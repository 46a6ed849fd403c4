#include "swarmcov/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace swarmcov {

namespace {

std::string num9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* swarm_color(int swarm_id) {
  static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#17becf"};
  return palette[swarm_id % 6];
}

}  // namespace

std::string export_csv(const TrajectoryLog& log) {
  std::ostringstream out;
  out << "iteration,swarm_id,agent_id,x,y,vx,vy,min_separation,swarm_cost\n";
  for (std::size_t it = 0; it < log.records.size(); ++it) {
    const IterationRecord& r = log.records[it];
    for (std::size_t a = 0; a < r.positions.size(); ++a) {
      const int swarm = log.agent_swarm_ids[a];
      out << it << ',' << swarm << ',' << a << ',' << num9(r.positions[a].x())
          << ',' << num9(r.positions[a].y()) << ','
          << num9(r.velocities[a].x()) << ',' << num9(r.velocities[a].y())
          << ',' << num9(r.min_separation) << ','
          << num9(r.swarm_costs[static_cast<std::size_t>(swarm)]) << '\n';
    }
  }
  return out.str();
}

std::string render_svg(const TrajectoryLog& log, const Scenario& s) {
  const std::vector<Vec2>& arena = s.arena.vertices();
  Vec2 lo = arena.front();
  Vec2 hi = lo;
  for (const Vec2& v : arena) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double margin = 0.6;
  const double min_x = lo.x() - margin;
  const double min_y = lo.y() - margin;
  const double width = hi.x() - lo.x() + 2.0 * margin;
  const double height = hi.y() - lo.y() + 2.0 * margin;
  // Flip vertically inside the view box so the y axis points up; the
  // reflection maps the box onto itself. Snap cancellation noise to zero.
  const auto fy = [&](double y) {
    const double flipped = 2.0 * min_y + height - y;
    return std::abs(flipped) < 1e-12 ? 0.0 : flipped;
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "viewBox=\"" << num9(min_x) << ' ' << num9(min_y) << ' '
      << num9(width) << ' ' << num9(height) << "\">\n";

  out << "  <polygon points=\"";
  for (std::size_t i = 0; i < arena.size(); ++i) {
    if (i > 0) out << ' ';
    out << num9(arena[i].x()) << ',' << num9(fy(arena[i].y()));
  }
  out << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"0.04\"/>\n";

  const std::size_t agents = log.agent_swarm_ids.size();
  for (std::size_t a = 0; a < agents; ++a) {
    out << "  <polyline points=\"";
    for (std::size_t it = 0; it < log.records.size(); ++it) {
      if (it > 0) out << ' ';
      const Vec2& p = log.records[it].positions[a];
      out << num9(p.x()) << ',' << num9(fy(p.y()));
    }
    out << "\" fill=\"none\" stroke=\"" << swarm_color(log.agent_swarm_ids[a])
        << "\" stroke-width=\"0.02\" stroke-opacity=\"0.8\"/>\n";
  }
  for (std::size_t a = 0; a < agents; ++a) {
    const Vec2& p = log.records.back().positions[a];
    out << "  <circle cx=\"" << num9(p.x()) << "\" cy=\"" << num9(fy(p.y()))
        << "\" r=\"" << num9(s.radius) << "\" fill=\""
        << swarm_color(log.agent_swarm_ids[a])
        << "\" fill-opacity=\"0.6\" stroke=\"#333333\" "
           "stroke-width=\"0.01\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace swarmcov
