#include "wsnsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace wsnsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Shortest round-trip decimal form; keeps CSV output reproducible.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long n = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected one of {on, off, true, false}, got '" + v + "'");
}

SinkPlacementModel parse_placement(const std::string& key, const std::string& v) {
  if (v == "one_side" || v == "1") return SinkPlacementModel::OneSide;
  if (v == "center" || v == "2") return SinkPlacementModel::Center;
  if (v == "around" || v == "3") return SinkPlacementModel::Around;
  throw ConfigError("key '" + key + "': expected one of {one_side, center, around} (or 1..3), got '" +
                    v + "'");
}

ClusterSizingModel parse_sizing(const std::string& key, const std::string& v) {
  if (v == "smaller_near_sink" || v == "1") return ClusterSizingModel::SmallerNearSink;
  if (v == "larger_near_sink" || v == "2") return ClusterSizingModel::LargerNearSink;
  if (v == "equal" || v == "3") return ClusterSizingModel::Equal;
  throw ConfigError("key '" + key +
                    "': expected one of {smaller_near_sink, larger_near_sink, equal} (or 1..3), got '" +
                    v + "'");
}

int parse_election(const std::string& key, const std::string& v) {
  if (v == "1" || v == "2" || v == "3") return v[0] - '0';
  throw ConfigError("key '" + key + "': expected one of {1, 2, 3}, got '" + v + "'");
}

StuckPolicy parse_stuck(const std::string& key, const std::string& v) {
  if (v == "direct_fallback") return StuckPolicy::DirectFallback;
  if (v == "drop") return StuckPolicy::Drop;
  throw ConfigError("key '" + key + "': expected one of {direct_fallback, drop}, got '" + v + "'");
}

CandidacyConfig parse_candidacy(const std::string& key, const std::string& v) {
  if (v == "auto") return CandidacyConfig::Auto;
  if (v == "literal_y") return CandidacyConfig::LiteralY;
  if (v == "toward_sink") return CandidacyConfig::TowardSink;
  throw ConfigError("key '" + key + "': expected one of {auto, literal_y, toward_sink}, got '" + v +
                    "'");
}

struct RawValue {
  std::string scalar;
  std::vector<std::string> list;
  bool is_list = false;
};

RawValue split_value(const std::string& key, const std::string& v) {
  RawValue out;
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError("key '" + key + "': unterminated list '" + v + "'");
    out.is_list = true;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.list.push_back(item);
    }
    if (out.list.empty()) throw ConfigError("key '" + key + "': empty list");
  } else {
    out.scalar = v;
  }
  return out;
}

}  // namespace

std::string to_token(SinkPlacementModel m) {
  switch (m) {
    case SinkPlacementModel::OneSide: return "one_side";
    case SinkPlacementModel::Center: return "center";
    case SinkPlacementModel::Around: return "around";
  }
  return "?";
}

std::string to_token(ClusterSizingModel m) {
  switch (m) {
    case ClusterSizingModel::SmallerNearSink: return "smaller_near_sink";
    case ClusterSizingModel::LargerNearSink: return "larger_near_sink";
    case ClusterSizingModel::Equal: return "equal";
  }
  return "?";
}

std::string to_token(StuckPolicy p) {
  return p == StuckPolicy::DirectFallback ? "direct_fallback" : "drop";
}

std::string to_token(CandidacyConfig c) {
  switch (c) {
    case CandidacyConfig::Auto: return "auto";
    case CandidacyConfig::LiteralY: return "literal_y";
    case CandidacyConfig::TowardSink: return "toward_sink";
  }
  return "?";
}

SweepConfig parse_config(const std::string& text) {
  SweepConfig sweep;
  std::stringstream lines(text);
  std::string line;
  int lineno = 0;
  bool seeds_given = false;

  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const RawValue value = split_value(key, trim(line.substr(eq + 1)));

    auto scalar_only = [&]() -> const std::string& {
      if (value.is_list)
        throw ConfigError("key '" + key + "' does not support multiple values");
      return value.scalar;
    };
    auto as_axis = [&]() {
      return value.is_list ? value.list : std::vector<std::string>{value.scalar};
    };

    RunConfig& base = sweep.base;
    if (key == "area_side") {
      base.area_side = parse_double(key, scalar_only());
    } else if (key == "node_count") {
      sweep.node_count_axis.clear();
      for (const auto& v : as_axis())
        sweep.node_count_axis.push_back(static_cast<int>(parse_long(key, v)));
      if (!value.is_list) {
        base.node_count = sweep.node_count_axis[0];
        sweep.node_count_axis.clear();
      }
    } else if (key == "placement_model") {
      sweep.placement_axis.clear();
      for (const auto& v : as_axis()) sweep.placement_axis.push_back(parse_placement(key, v));
      if (!value.is_list) {
        base.placement = sweep.placement_axis[0];
        sweep.placement_axis.clear();
      }
    } else if (key == "sizing_model") {
      sweep.sizing_axis.clear();
      for (const auto& v : as_axis()) sweep.sizing_axis.push_back(parse_sizing(key, v));
      if (!value.is_list) {
        base.sizing = sweep.sizing_axis[0];
        sweep.sizing_axis.clear();
      }
    } else if (key == "election_model") {
      sweep.election_axis.clear();
      for (const auto& v : as_axis()) sweep.election_axis.push_back(parse_election(key, v));
      if (!value.is_list) {
        base.election = static_cast<ElectionModel>(sweep.election_axis[0]);
        sweep.election_axis.clear();
      }
    } else if (key == "tier_count") {
      sweep.tier_count_axis.clear();
      for (const auto& v : as_axis())
        sweep.tier_count_axis.push_back(static_cast<int>(parse_long(key, v)));
      if (!value.is_list) {
        base.tier_count = sweep.tier_count_axis[0];
        sweep.tier_count_axis.clear();
      }
    } else if (key == "sink_count") {
      sweep.sink_count_axis.clear();
      for (const auto& v : as_axis())
        sweep.sink_count_axis.push_back(static_cast<int>(parse_long(key, v)));
      if (!value.is_list) {
        base.sink_count = sweep.sink_count_axis[0];
        sweep.sink_count_axis.clear();
      }
    } else if (key == "coverage_radius") {
      sweep.coverage_axis.clear();
      for (const auto& v : as_axis()) sweep.coverage_axis.push_back(parse_double(key, v));
      if (!value.is_list) {
        base.coverage_radius = sweep.coverage_axis[0];
        sweep.coverage_axis.clear();
      }
    } else if (key == "growth_ratio") {
      base.growth_ratio = parse_double(key, scalar_only());
    } else if (key == "base_clusters_per_tier") {
      base.base_clusters_per_tier = static_cast<int>(parse_long(key, scalar_only()));
    } else if (key == "candidacy_mode") {
      base.candidacy = parse_candidacy(key, scalar_only());
    } else if (key == "stuck_policy") {
      base.stuck_policy = parse_stuck(key, scalar_only());
    } else if (key == "mac_overhead") {
      base.mac_overhead = parse_bool(key, scalar_only());
    } else if (key == "election_broadcast") {
      base.election_broadcast = parse_bool(key, scalar_only());
    } else if (key == "ctrl_bits") {
      base.ctrl_bits = static_cast<int>(parse_long(key, scalar_only()));
    } else if (key == "e_elec") {
      base.energy.e_elec = parse_double(key, scalar_only());
    } else if (key == "eps_fs") {
      base.energy.eps_fs = parse_double(key, scalar_only());
    } else if (key == "eps_mp") {
      base.energy.eps_mp = parse_double(key, scalar_only());
    } else if (key == "d0") {
      base.energy.d0 = parse_double(key, scalar_only());
    } else if (key == "data_rate") {
      base.energy.data_rate = parse_double(key, scalar_only());
    } else if (key == "initial_energy") {
      base.energy.initial_energy = parse_double(key, scalar_only());
    } else if (key == "e_da") {
      base.energy.e_da = parse_double(key, scalar_only());
    } else if (key == "max_rounds") {
      base.max_rounds = parse_long(key, scalar_only());
    } else if (key == "seed") {
      base.seed = parse_u64(key, scalar_only());
    } else if (key == "seeds") {
      seeds_given = true;
      sweep.seeds.clear();
      if (value.is_list) {
        for (const auto& v : value.list) sweep.seeds.push_back(parse_u64(key, v));
      } else {
        const long count = parse_long(key, value.scalar);
        if (count < 1) throw ConfigError("key 'seeds': count must be >= 1");
        for (long s = 1; s <= count; ++s) sweep.seeds.push_back(static_cast<std::uint64_t>(s));
      }
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (!seeds_given) sweep.seeds = {sweep.base.seed};

  // Fixed-config feasibility that does not depend on axis combinations.
  if (sweep.placement_axis.empty() && sweep.sink_count_axis.empty() &&
      sweep.base.placement == SinkPlacementModel::Center && sweep.base.sink_count != 1)
    throw ConfigError("center placement requires sink_count = 1");
  return sweep;
}

SweepConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ExpandedSweep expand_sweep(const SweepConfig& sweep) {
  auto one_of = [](auto axis, auto base_value) {
    if (axis.empty()) axis.push_back(base_value);
    return axis;
  };
  const auto placements = one_of(sweep.placement_axis, sweep.base.placement);
  const auto sizings = one_of(sweep.sizing_axis, sweep.base.sizing);
  const auto elections = one_of(sweep.election_axis, static_cast<int>(sweep.base.election));
  const auto node_counts = one_of(sweep.node_count_axis, sweep.base.node_count);
  const auto tier_counts = one_of(sweep.tier_count_axis, sweep.base.tier_count);
  const auto sink_counts = one_of(sweep.sink_count_axis, sweep.base.sink_count);
  const auto coverages = one_of(sweep.coverage_axis, sweep.base.coverage_radius);

  ExpandedSweep out;
  for (const auto placement : placements)
    for (const auto sizing : sizings)
      for (const int election : elections)
        for (const int node_count : node_counts)
          for (const int tier_count : tier_counts)
            for (const int sink_count : sink_counts)
              for (const double coverage : coverages) {
                if (placement == SinkPlacementModel::Center && sink_count != 1) {
                  out.skipped.push_back("center placement with sink_count " +
                                        std::to_string(sink_count) + ": infeasible, skipped");
                  continue;
                }
                RunConfig c = sweep.base;
                c.placement = placement;
                c.sizing = sizing;
                c.election = static_cast<ElectionModel>(election);
                c.node_count = node_count;
                c.tier_count = tier_count;
                c.sink_count = sink_count;
                c.coverage_radius = coverage;
                out.configs.push_back(c);
              }
  if (out.configs.empty()) throw ConfigError("sweep has no feasible configuration");
  return out;
}

std::vector<SweepRow> execute(const std::vector<RunConfig>& configs,
                              const std::vector<std::uint64_t>& seeds, int parallelism) {
  if (seeds.empty()) throw std::invalid_argument("execute: at least one seed required");
  const std::size_t jobs = configs.size() * seeds.size();
  std::vector<SweepRow> rows(jobs);

  auto run_job = [&](std::size_t j) {
    const std::size_t ci = j / seeds.size();
    const std::size_t si = j % seeds.size();
    RunConfig cfg = configs[ci];
    cfg.seed = seeds[si];
    const RunResult res = run(cfg);
    SweepRow& row = rows[j];
    row.config_index = static_cast<int>(ci);
    row.seed = seeds[si];
    row.config = configs[ci];
    row.lifetime_rounds = res.lifetime_rounds;
    row.truncated = res.truncated;
    row.first_dead_node = res.first_dead_node;
    row.rounds_executed = res.rounds_executed;
    row.total_energy_spent = res.total_energy_spent;
    row.totals = res.totals;
  };

  if (parallelism <= 1 || jobs <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) run_job(j);
    };
    std::vector<std::thread> pool;
    const int n_workers = std::min<int>(parallelism, static_cast<int>(jobs));
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;  // slot order is (config index, seed index) by construction
}

namespace {

const char* kConfigColumns =
    "area_side,node_count,placement_model,sink_count,sizing_model,tier_count,"
    "election_model,candidacy_mode,coverage_radius,growth_ratio,base_clusters_per_tier,"
    "initial_energy,e_elec,eps_fs,eps_mp,d0,data_rate,e_da,election_broadcast,ctrl_bits,"
    "mac_overhead,stuck_policy,max_rounds";

std::string config_fields(const RunConfig& c) {
  std::string s;
  s += format_double(c.area_side);
  s += ',' + std::to_string(c.node_count);
  s += ',' + to_token(c.placement);
  s += ',' + std::to_string(c.sink_count);
  s += ',' + to_token(c.sizing);
  s += ',' + std::to_string(c.tier_count);
  s += ',' + std::to_string(static_cast<int>(c.election));
  s += ',' + to_token(c.candidacy);
  s += ',' + format_double(c.coverage_radius);
  s += ',' + format_double(c.growth_ratio);
  s += ',' + std::to_string(c.base_clusters_per_tier);
  s += ',' + format_double(c.energy.initial_energy);
  s += ',' + format_double(c.energy.e_elec);
  s += ',' + format_double(c.energy.eps_fs);
  s += ',' + format_double(c.energy.eps_mp);
  s += ',' + format_double(c.energy.d0);
  s += ',' + format_double(c.energy.data_rate);
  s += ',' + format_double(c.energy.e_da);
  s += ',' + std::string(c.election_broadcast ? "1" : "0");
  s += ',' + std::to_string(c.ctrl_bits);
  s += ',' + std::string(c.mac_overhead ? "1" : "0");
  s += ',' + to_token(c.stuck_policy);
  s += ',' + std::to_string(c.max_rounds);
  return s;
}

}  // namespace

std::string config_hash(const RunConfig& config) {
  // FNV-1a over the canonical config fields.
  const std::string s = config_fields(config);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

void write_results_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "config_index,seed," << kConfigColumns
      << ",lifetime_rounds,truncated,first_dead_node,rounds_executed,total_energy_spent,"
         "intra_sent,intra_delivered,inter_sent,inter_delivered,stuck_events,"
         "elections_held,fallback_elections\n";
  for (const SweepRow& r : rows) {
    out << r.config_index << ',' << r.seed << ',' << config_fields(r.config) << ','
        << r.lifetime_rounds << ',' << (r.truncated ? 1 : 0) << ',' << r.first_dead_node << ','
        << r.rounds_executed << ',' << format_double(r.total_energy_spent) << ','
        << r.totals.intra_sent << ',' << r.totals.intra_delivered << ',' << r.totals.inter_sent
        << ',' << r.totals.inter_delivered << ',' << r.totals.stuck_events << ','
        << r.totals.elections_held << ',' << r.totals.fallback_elections << '\n';
  }
}

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("summarize: no rows");
  std::vector<SummaryRow> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].config_index == rows[i].config_index) ++j;
    SummaryRow s;
    s.config_index = rows[i].config_index;
    s.config = rows[i].config;
    s.config_hash = config_hash(rows[i].config);
    double sum = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      if (rows[k].truncated) continue;
      sum += static_cast<double>(rows[k].lifetime_rounds);
      ++s.n_seeds;
    }
    if (s.n_seeds > 0) {
      s.mean_lifetime = sum / s.n_seeds;
      if (s.n_seeds > 1) {
        double ss = 0.0;
        for (std::size_t k = i; k < j; ++k) {
          if (rows[k].truncated) continue;
          const double d = static_cast<double>(rows[k].lifetime_rounds) - s.mean_lifetime;
          ss += d * d;
        }
        s.stdev_lifetime = std::sqrt(ss / (s.n_seeds - 1));
      }
    }
    out.push_back(std::move(s));
    i = j;
  }
  return out;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "config_hash,config_index," << kConfigColumns << ",n_seeds,mean_lifetime,stdev_lifetime\n";
  for (const SummaryRow& s : rows) {
    out << s.config_hash << ',' << s.config_index << ',' << config_fields(s.config) << ','
        << s.n_seeds << ',';
    if (s.n_seeds > 0) out << format_double(s.mean_lifetime);
    out << ',';
    if (s.stdev_lifetime) out << format_double(*s.stdev_lifetime);
    out << '\n';
  }
}

std::string figure_family_name(FigureFamily family) {
  switch (family) {
    case FigureFamily::Tiers: return "tiers";
    case FigureFamily::Density: return "density";
    case FigureFamily::Sinks: return "sinks";
    case FigureFamily::Coverage: return "coverage";
  }
  return "?";
}

std::vector<FigureTable> emit_figure_data(const std::vector<SweepRow>& rows, FigureFamily family) {
  if (rows.empty()) throw std::invalid_argument("emit_figure_data: no rows");

  auto x_of = [family](const SweepRow& r) -> double {
    switch (family) {
      case FigureFamily::Tiers: return r.config.tier_count;
      case FigureFamily::Density: return r.config.node_count;
      case FigureFamily::Sinks: return r.config.sink_count;
      case FigureFamily::Coverage: return r.config.coverage_radius;
    }
    return 0.0;
  };

  std::vector<FigureTable> tables;
  auto table_for = [&](SinkPlacementModel placement, ClusterSizingModel sizing) -> FigureTable& {
    for (auto& t : tables)
      if (t.placement == placement && t.sizing == sizing) return t;
    tables.push_back({family, placement, sizing, {}});
    return tables.back();
  };

  struct Key {
    SinkPlacementModel placement;
    ClusterSizingModel sizing;
    double x;
    int election;
    bool operator<(const Key& o) const {
      if (placement != o.placement) return placement < o.placement;
      if (sizing != o.sizing) return sizing < o.sizing;
      if (x != o.x) return x < o.x;
      return election < o.election;
    }
  };
  struct Acc {
    std::vector<double> lifetimes;
  };
  std::map<Key, Acc> groups;
  for (const SweepRow& r : rows) {
    if (family == FigureFamily::Sinks && r.config.placement == SinkPlacementModel::Center)
      throw std::invalid_argument(
          "emit_figure_data: the sink-count family has no centre-placement variant");
    if (r.truncated) continue;
    groups[{r.config.placement, r.config.sizing, x_of(r), static_cast<int>(r.config.election)}]
        .lifetimes.push_back(static_cast<double>(r.lifetime_rounds));
  }

  for (const auto& [key, acc] : groups) {
    FigurePoint p;
    p.x_value = key.x;
    p.election_model = key.election;
    p.n_seeds = static_cast<int>(acc.lifetimes.size());
    double sum = 0.0;
    for (double v : acc.lifetimes) sum += v;
    p.mean_lifetime = sum / p.n_seeds;
    if (p.n_seeds > 1) {
      double ss = 0.0;
      for (double v : acc.lifetimes) ss += (v - p.mean_lifetime) * (v - p.mean_lifetime);
      p.stdev = std::sqrt(ss / (p.n_seeds - 1));
    }
    table_for(key.placement, key.sizing).points.push_back(p);
  }
  return tables;
}

void write_figure_csv(const FigureTable& table, std::ostream& out) {
  out << "x_value,election_model,mean_lifetime,stdev,n_seeds\n";
  for (const FigurePoint& p : table.points) {
    out << format_double(p.x_value) << ',' << p.election_model << ','
        << format_double(p.mean_lifetime) << ',';
    if (p.stdev) out << format_double(*p.stdev);
    out << ',' << p.n_seeds << '\n';
  }
}

std::string figure_table_filename(const FigureTable& table) {
  return "fig_" + figure_family_name(table.family) + "_" + to_token(table.placement) + "_" +
         to_token(table.sizing) + ".csv";
}

}  // namespace wsnsim
