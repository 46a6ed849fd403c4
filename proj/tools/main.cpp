#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "swarmcov/export.hpp"
#include "swarmcov/simulation.hpp"

namespace {

namespace fs = std::filesystem;

const char* status_name(swarmcov::TerminationStatus s) {
  switch (s) {
    case swarmcov::TerminationStatus::Converged:
      return "converged";
    case swarmcov::TerminationStatus::MaxIters:
      return "max_iters";
    default:
      return "running";
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            bool write_csv, bool write_svg, bool no_avoidance) {
  swarmcov::Scenario scenario =
      swarmcov::load_scenario_file(scenario_path);
  if (no_avoidance) {
    scenario.avoidance = false;
  }
  const swarmcov::TrajectoryLog log = swarmcov::run_scenario(scenario);

  double min_sep = std::numeric_limits<double>::infinity();
  for (const swarmcov::IterationRecord& r : log.records) {
    min_sep = std::min(min_sep, r.min_separation);
  }
  std::cout << "status: " << status_name(log.status) << "\n"
            << "iterations: " << log.iterations() << "\n"
            << "min separation: " << min_sep << "\n"
            << "collision events: " << log.collisions.size() << "\n";
  for (std::size_t s = 0; s < log.records.back().swarm_costs.size(); ++s) {
    std::cout << "final cost, swarm " << s << ": "
              << log.records.back().swarm_costs[s] << "\n";
  }

  fs::create_directories(out_dir);
  if (write_csv) {
    const fs::path p = fs::path(out_dir) / "trajectory.csv";
    write_file(p, swarmcov::export_csv(log));
    std::cout << "wrote " << p.string() << "\n";
  }
  if (write_svg) {
    const fs::path p = fs::path(out_dir) / "trajectory.svg";
    write_file(p, swarmcov::render_svg(log, scenario));
    std::cout << "wrote " << p.string() << "\n";
  }

  if (scenario.avoidance && !log.collisions.empty()) {
    std::cerr << "error: collision detected in a run with avoidance "
                 "enabled\n";
    return 2;
  }
  return 0;
}

int cmd_montecarlo(const std::string& scenario_path, int runs,
                   std::uint64_t seed, const std::string& out_dir) {
  const swarmcov::Scenario scenario =
      swarmcov::load_scenario_file(scenario_path);
  const swarmcov::CampaignReport report =
      swarmcov::monte_carlo(scenario, runs, seed);

  int failed = 0;
  double min_sep = std::numeric_limits<double>::infinity();
  for (const swarmcov::RunOutcome& o : report.outcomes) {
    if (o.sampling_failed) {
      ++failed;
    } else {
      min_sep = std::min(min_sep, o.min_separation);
    }
  }
  std::cout << "runs: " << report.runs << "\n"
            << "collision-free runs: " << report.collision_free_runs << "\n"
            << "failed runs: " << failed << "\n"
            << "campaign min separation: " << min_sep << "\n";

  fs::create_directories(out_dir);
  std::ostringstream csv;
  csv << "run,seed,status,sampling_failed,iterations,collision_events,"
         "min_separation\n";
  for (const swarmcov::RunOutcome& o : report.outcomes) {
    csv << o.run_index << ',' << o.seed << ',' << status_name(o.status) << ','
        << (o.sampling_failed ? 1 : 0) << ',' << o.iterations << ','
        << o.collision_events << ',' << o.min_separation << '\n';
  }
  const fs::path p = fs::path(out_dir) / "campaign.csv";
  write_file(p, csv.str());
  std::cout << "wrote " << p.string() << "\n";

  if (scenario.avoidance &&
      report.collision_free_runs + failed < report.runs) {
    std::cerr << "error: collisions detected in a campaign with avoidance "
                 "enabled\n";
    return 2;
  }
  return 0;
}

int cmd_validate(const std::string& scenario_path) {
  const swarmcov::Scenario scenario =
      swarmcov::load_scenario_file(scenario_path);
  int agents = 0;
  for (const swarmcov::SwarmSpec& s : scenario.swarms) {
    agents += s.agent_count();
  }
  std::cout << "scenario ok: " << scenario.swarms.size() << " swarms, "
            << agents << " agents, avoidance "
            << (scenario.avoidance ? "on" : "off") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi coverage control for independent swarms with "
               "reciprocal collision avoidance"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  bool write_csv = false;
  bool write_svg = false;
  bool no_avoidance = false;
  int runs = 100;
  std::uint64_t seed = 1;

  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required();
  run->add_option("--out-dir", out_dir, "Output directory");
  run->add_flag("--csv", write_csv, "Write trajectory.csv");
  run->add_flag("--svg", write_svg, "Write trajectory.svg");
  run->add_flag("--no-avoidance", no_avoidance,
                "Override the scenario and disable collision avoidance");

  CLI::App* mc = app.add_subcommand(
      "montecarlo", "Run a seeded campaign of independent scenario runs");
  mc->add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required();
  mc->add_option("--runs", runs, "Number of runs");
  mc->add_option("--seed", seed, "Master seed");
  mc->add_option("--out-dir", out_dir, "Output directory");

  CLI::App* validate =
      app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(scenario_path, out_dir, write_csv, write_svg,
                     no_avoidance);
    }
    if (mc->parsed()) {
      return cmd_montecarlo(scenario_path, runs, seed, out_dir);
    }
    return cmd_validate(scenario_path);
  } catch (const swarmcov::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
