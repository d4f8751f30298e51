#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsnsim/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv("WSNSIM_OUT")) return env;
  return "out";
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

json round_record(const wsnsim::RoundReport& report) {
  json deaths = json::array();
  for (int d : report.deaths) deaths.push_back(d);
  json elections = json::array();
  for (const auto& e : report.elections)
    elections.push_back({{"cluster", e.cluster_id},
                         {"winner", e.winner},
                         {"fallback", e.fallback_used}});
  return {{"round", report.round_index},
          {"intra_sent", report.intra_sent},
          {"intra_delivered", report.intra_delivered},
          {"inter_sent", report.inter_sent},
          {"inter_delivered", report.inter_delivered},
          {"stuck_events", report.stuck_events},
          {"energy_spent", report.energy_spent},
          {"deaths", deaths},
          {"elections", elections}};
}

int do_run(const std::string& config_path, std::uint64_t seed, bool seed_given, bool trace) {
  wsnsim::SweepConfig sweep = wsnsim::load_config_file(config_path);
  wsnsim::RunConfig cfg = sweep.base;
  if (seed_given) cfg.seed = seed;

  wsnsim::RoundTraceFn tracer;
  if (trace)
    tracer = [](const wsnsim::RoundReport& r) { std::cout << round_record(r).dump() << "\n"; };

  const wsnsim::RunResult res = wsnsim::run(cfg, tracer);
  std::cout << "lifetime_rounds: " << res.lifetime_rounds
            << (res.truncated ? " (truncated at max_rounds)" : "") << "\n";
  if (res.first_dead_node >= 0) std::cout << "first_dead_node: " << res.first_dead_node << "\n";
  std::cout << "rounds_executed: " << res.rounds_executed << "\n"
            << "total_energy_spent_J: " << res.total_energy_spent << "\n"
            << "intra sent/delivered: " << res.totals.intra_sent << "/"
            << res.totals.intra_delivered << "\n"
            << "inter sent/delivered: " << res.totals.inter_sent << "/"
            << res.totals.inter_delivered << "\n"
            << "stuck_events: " << res.totals.stuck_events << "\n"
            << "elections held/fallback: " << res.totals.elections_held << "/"
            << res.totals.fallback_elections << "\n";
  return 0;
}

int do_sweep(const std::string& config_path, long seeds_override, int jobs,
             const std::string& out_dir) {
  wsnsim::SweepConfig sweep = wsnsim::load_config_file(config_path);
  if (seeds_override > 0) {
    sweep.seeds.clear();
    for (long s = 1; s <= seeds_override; ++s)
      sweep.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  const wsnsim::ExpandedSweep expanded = wsnsim::expand_sweep(sweep);
  for (const std::string& why : expanded.skipped) std::cerr << "skipped: " << why << "\n";

  const auto rows = wsnsim::execute(expanded.configs, sweep.seeds, jobs);

  fs::create_directories(out_dir);
  {
    std::ostringstream csv;
    wsnsim::write_results_csv(rows, csv);
    write_file(fs::path(out_dir) / "results.csv", csv.str());
  }
  {
    std::ostringstream csv;
    wsnsim::write_summary_csv(wsnsim::summarize(rows), csv);
    write_file(fs::path(out_dir) / "summary.csv", csv.str());
  }
  std::cout << rows.size() << " runs (" << expanded.configs.size() << " configs x "
            << sweep.seeds.size() << " seeds) -> " << out_dir << "/results.csv, summary.csv\n";
  return 0;
}

// Canonical sweeps behind the figure families: tiers 1..5 at 500 nodes,
// density 100..500, sink counts 1/2/4/8, coverage 75..150 m, all election
// models, 10 seeds. Initial energy 0.1 J keeps the full set tractable;
// lifetimes scale linearly with it.
int do_figures(const std::string& out_dir, long seeds, int jobs, double initial_energy) {
  using wsnsim::ClusterSizingModel;
  using wsnsim::FigureFamily;
  using wsnsim::SinkPlacementModel;

  fs::create_directories(out_dir);
  std::vector<std::uint64_t> seed_list;
  for (long s = 1; s <= seeds; ++s) seed_list.push_back(static_cast<std::uint64_t>(s));

  const std::vector<SinkPlacementModel> placements = {
      SinkPlacementModel::OneSide, SinkPlacementModel::Center, SinkPlacementModel::Around};
  const std::vector<ClusterSizingModel> sizings = {ClusterSizingModel::SmallerNearSink,
                                                   ClusterSizingModel::LargerNearSink,
                                                   ClusterSizingModel::Equal};

  auto base_for = [&](SinkPlacementModel placement, ClusterSizingModel sizing) {
    wsnsim::RunConfig c;
    c.node_count = 300;
    c.tier_count = 2;
    c.placement = placement;
    c.sizing = sizing;
    c.sink_count = placement == SinkPlacementModel::Around ? 4 : 1;
    c.energy.initial_energy = initial_energy;
    return c;
  };

  auto run_family = [&](FigureFamily family, const std::vector<SinkPlacementModel>& pls,
                        auto&& vary) {
    std::vector<wsnsim::RunConfig> configs;
    for (const auto placement : pls)
      for (const auto sizing : sizings)
        for (int em = 1; em <= 3; ++em) {
          wsnsim::RunConfig base = base_for(placement, sizing);
          base.election = static_cast<wsnsim::ElectionModel>(em);
          vary(base, configs);
        }
    const auto rows = wsnsim::execute(configs, seed_list, jobs);
    for (const auto& table : wsnsim::emit_figure_data(rows, family)) {
      std::ostringstream csv;
      wsnsim::write_figure_csv(table, csv);
      write_file(fs::path(out_dir) / wsnsim::figure_table_filename(table), csv.str());
    }
    std::ostringstream csv;
    wsnsim::write_results_csv(rows, csv);
    write_file(fs::path(out_dir) / ("results_" + wsnsim::figure_family_name(family) + ".csv"),
               csv.str());
    std::cout << "family " << wsnsim::figure_family_name(family) << ": " << rows.size()
              << " runs\n";
  };

  // Tiers (one table): one-side placement, smaller-near-sink sizing, 500 nodes.
  {
    std::vector<wsnsim::RunConfig> configs;
    for (int em = 1; em <= 3; ++em)
      for (int tiers = 1; tiers <= 5; ++tiers) {
        wsnsim::RunConfig c = base_for(SinkPlacementModel::OneSide,
                                       ClusterSizingModel::SmallerNearSink);
        c.node_count = 500;
        c.election = static_cast<wsnsim::ElectionModel>(em);
        c.tier_count = tiers;
        configs.push_back(c);
      }
    const auto rows = wsnsim::execute(configs, seed_list, jobs);
    for (const auto& table : wsnsim::emit_figure_data(rows, FigureFamily::Tiers)) {
      std::ostringstream csv;
      wsnsim::write_figure_csv(table, csv);
      write_file(fs::path(out_dir) / wsnsim::figure_table_filename(table), csv.str());
    }
    std::ostringstream csv;
    wsnsim::write_results_csv(rows, csv);
    write_file(fs::path(out_dir) / "results_tiers.csv", csv.str());
    std::cout << "family tiers: " << rows.size() << " runs\n";
  }

  run_family(FigureFamily::Density, placements, [](wsnsim::RunConfig base, auto& configs) {
    for (int n : {100, 200, 300, 400, 500}) {
      base.node_count = n;
      configs.push_back(base);
    }
  });
  run_family(FigureFamily::Sinks,
             {SinkPlacementModel::OneSide, SinkPlacementModel::Around},
             [](wsnsim::RunConfig base, auto& configs) {
               for (int s : {1, 2, 4, 8}) {
                 base.sink_count = s;
                 configs.push_back(base);
               }
             });
  run_family(FigureFamily::Coverage, placements, [](wsnsim::RunConfig base, auto& configs) {
    for (double r : {75.0, 100.0, 125.0, 150.0}) {
      base.coverage_radius = r;
      configs.push_back(base);
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-based cluster WSN lifetime simulator and sweep harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = default_out_dir();
  std::uint64_t seed = 0;
  long seeds = 0;
  int jobs = 1;
  bool trace = false;
  double fig_initial_energy = 0.1;

  auto* cmd_run = app.add_subcommand("run", "Run a single configuration and print the outcome");
  cmd_run->add_option("--config", config_path, "Config file")->required();
  auto* seed_opt = cmd_run->add_option("--seed", seed, "Override the config seed");
  cmd_run->add_flag("--trace", trace, "Print one JSON line per round");

  auto* cmd_sweep = app.add_subcommand("sweep", "Expand a sweep config and write CSV results");
  cmd_sweep->add_option("--config", config_path, "Sweep config file")->required();
  cmd_sweep->add_option("--seeds", seeds, "Run seeds 1..N (overrides the config)");
  cmd_sweep->add_option("--jobs", jobs, "Parallel workers");
  cmd_sweep->add_option("--out", out_dir, "Output directory (or $WSNSIM_OUT)");

  auto* cmd_figures =
      app.add_subcommand("figures", "Run the canonical sweeps and write plot-ready tables");
  cmd_figures->add_option("--out", out_dir, "Output directory (or $WSNSIM_OUT)");
  cmd_figures->add_option("--seeds", seeds, "Seeds per configuration (default 10)");
  cmd_figures->add_option("--jobs", jobs, "Parallel workers");
  cmd_figures->add_option("--initial-energy", fig_initial_energy,
                          "Per-node battery for the canonical sweeps (J)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) return do_run(config_path, seed, seed_opt->count() > 0, trace);
    if (cmd_sweep->parsed()) return do_sweep(config_path, seeds, jobs, out_dir);
    if (cmd_figures->parsed())
      return do_figures(out_dir, seeds > 0 ? seeds : 10, jobs, fig_initial_energy);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
