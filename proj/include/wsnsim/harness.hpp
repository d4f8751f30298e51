#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnsim/engine.hpp"

namespace wsnsim {

/// Rejected sweep configuration text (unknown key, bad enum value, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base run plus the swept axes. An axis key given a list value in the config
/// text sweeps that parameter; a scalar pins it.
struct SweepConfig {
  RunConfig base;
  std::vector<SinkPlacementModel> placement_axis;
  std::vector<ClusterSizingModel> sizing_axis;
  std::vector<int> election_axis;
  std::vector<int> node_count_axis;
  std::vector<int> tier_count_axis;
  std::vector<int> sink_count_axis;
  std::vector<double> coverage_axis;
  std::vector<std::uint64_t> seeds;  // defaults to {base.seed}
};

/// Strict key = value parser; unknown keys and invalid enum values are
/// rejected by name. '#' starts a comment, [a, b, c] is a list.
SweepConfig parse_config(const std::string& text);
SweepConfig load_config_file(const std::string& path);

struct ExpandedSweep {
  std::vector<RunConfig> configs;        // Cartesian product, canonical axis order
  std::vector<std::string> skipped;      // infeasible combinations with reasons
};

/// Axis order, outermost first: placement, sizing, election, node_count,
/// tier_count, sink_count, coverage_radius.
ExpandedSweep expand_sweep(const SweepConfig& sweep);

struct SweepRow {
  int config_index = 0;
  std::uint64_t seed = 0;
  RunConfig config;  // seed field left at the base value; the row seed applies
  long lifetime_rounds = 0;
  bool truncated = false;
  int first_dead_node = -1;
  long rounds_executed = 0;
  double total_energy_spent = 0.0;
  RunTotals totals;
};

/// Runs every (config, seed) pair. Rows come back sorted by (config index,
/// seed index) whatever the parallelism; the output is identical for any
/// worker count.
std::vector<SweepRow> execute(const std::vector<RunConfig>& configs,
                              const std::vector<std::uint64_t>& seeds, int parallelism);

void write_results_csv(const std::vector<SweepRow>& rows, std::ostream& out);

struct SummaryRow {
  int config_index = 0;
  std::string config_hash;
  RunConfig config;
  int n_seeds = 0;  // non-truncated runs
  double mean_lifetime = 0.0;
  std::optional<double> stdev_lifetime;  // absent for a single seed
};

/// Per-config mean and sample standard deviation of lifetime over seeds;
/// truncated runs are excluded.
std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

enum class FigureFamily { Tiers, Density, Sinks, Coverage };

struct FigurePoint {
  double x_value = 0.0;
  int election_model = 0;
  double mean_lifetime = 0.0;
  std::optional<double> stdev;
  int n_seeds = 0;
};

struct FigureTable {
  FigureFamily family = FigureFamily::Tiers;
  SinkPlacementModel placement = SinkPlacementModel::OneSide;
  ClusterSizingModel sizing = ClusterSizingModel::Equal;
  std::vector<FigurePoint> points;
};

/// Long-format tables, one per (placement, sizing) pair present in the rows,
/// x = the family's swept parameter. The sink-count family has no
/// centre-placement variant and rejects such rows.
std::vector<FigureTable> emit_figure_data(const std::vector<SweepRow>& rows, FigureFamily family);
void write_figure_csv(const FigureTable& table, std::ostream& out);

std::string figure_family_name(FigureFamily family);
std::string figure_table_filename(const FigureTable& table);

// Token names used in config files and CSV columns.
std::string to_token(SinkPlacementModel m);
std::string to_token(ClusterSizingModel m);
std::string to_token(StuckPolicy p);
std::string to_token(CandidacyConfig c);
std::string config_hash(const RunConfig& config);

}  // namespace wsnsim
