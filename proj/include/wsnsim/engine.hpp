#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wsnsim/election.hpp"
#include "wsnsim/energy.hpp"
#include "wsnsim/routing.hpp"
#include "wsnsim/topology.hpp"

namespace wsnsim {

/// How the constrained election's candidacy gate is chosen. Auto picks
/// LiteralY when the sinks sit on the y = 0 side and TowardSink otherwise.
enum class CandidacyConfig { Auto, LiteralY, TowardSink };

struct RunConfig {
  double area_side = 500.0;
  int node_count = 300;
  SinkPlacementModel placement = SinkPlacementModel::OneSide;
  int sink_count = 1;
  int tier_count = 2;
  ClusterSizingModel sizing = ClusterSizingModel::Equal;
  double growth_ratio = 1.5;
  int base_clusters_per_tier = 4;
  ElectionModel election = ElectionModel::CentreDistance;
  CandidacyConfig candidacy = CandidacyConfig::Auto;
  double coverage_radius = 100.0;
  EnergyParams energy;
  bool mac_overhead = false;       // RTS/CTS/ACK energy per data hop
  bool election_broadcast = true;  // winner announcement energy
  int ctrl_bits = 128;
  StuckPolicy stuck_policy = StuckPolicy::DirectFallback;
  std::uint64_t seed = 1;
  long max_rounds = 100000;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Extra control-frame bits each side of a data hop handles when the MAC
/// overhead toggle is on: the sender transmits an RTS and receives the CTS
/// and ACK; the receiver mirrors that. All zero when the toggle is off.
struct MacOverhead {
  double sender_tx_bits = 0.0;    // RTS
  double sender_rx_bits = 0.0;    // CTS + ACK
  double receiver_tx_bits = 0.0;  // CTS + ACK
  double receiver_rx_bits = 0.0;  // RTS
};

MacOverhead mac_bits(bool mac_overhead_enabled);

CandidacyMode resolve_candidacy(CandidacyConfig cfg, SinkPlacementModel placement);

struct RoundReport {
  long round_index = 0;  // 1-based
  std::vector<ElectionOutcome> elections;
  long intra_sent = 0;
  long intra_delivered = 0;
  long inter_sent = 0;
  long inter_delivered = 0;
  long stuck_events = 0;
  double energy_spent = 0.0;
  std::vector<int> deaths;  // event order within the round
};

struct RunTotals {
  long intra_sent = 0;
  long intra_delivered = 0;
  long inter_sent = 0;
  long inter_delivered = 0;
  long stuck_events = 0;
  long elections_held = 0;
  long fallback_elections = 0;
};

struct RunResult {
  RunConfig config;
  long lifetime_rounds = 0;   // fully completed rounds before the first death
  int first_dead_node = -1;   // -1 when truncated with no death
  bool truncated = false;     // max_rounds reached with every node alive
  long rounds_executed = 0;
  std::vector<double> node_consumed;
  std::vector<double> node_residual;
  std::vector<long> node_relayed;  // packets forwarded for other nodes
  double total_initial_energy = 0.0;
  double total_energy_spent = 0.0;  // sum of node_consumed in index order
  RunTotals totals;
};

/// One simulation instance: fixed topology, clusters, target sinks and
/// batteries, advanced round by round. Strictly sequential and deterministic;
/// replaying a config reproduces every number bit for bit.
class Engine {
 public:
  explicit Engine(const RunConfig& config);
  /// Pins the node field instead of drawing it from the seed. The field must
  /// produce collision-free node ids.
  Engine(const RunConfig& config, Deployment deployment);

  RoundReport run_round();

  const Deployment& deployment() const { return dep_; }
  const TierPlan& plan() const { return plan_; }
  const std::vector<int>& membership() const { return membership_; }
  const std::vector<Battery>& batteries() const { return batteries_; }
  const std::vector<long>& node_relayed() const { return relayed_; }
  long rounds_run() const { return round_; }
  int alive_count() const;

 private:
  void init();
  bool charge_hop(int sender, int receiver, bool receiver_is_sink, double dist, double bits,
                  RoundReport& report);
  RouteStatus deliver(int origin, int cluster_head, bool to_sink, Point sink, double bits,
                      RoundReport& report);
  void record_death(int node, RoundReport& report);

  RunConfig cfg_;
  CandidacyMode candidacy_mode_;
  Deployment dep_;
  TierPlan plan_;
  std::vector<int> membership_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<Battery> batteries_;
  std::vector<char> alive_;
  std::vector<long> relayed_;
  std::vector<double> dist_to_center_;  // node -> own cluster centre
  std::vector<double> dist_to_target_; // node -> own cluster's target sink
  long round_ = 0;
};

using RoundTraceFn = std::function<void(const RoundReport&)>;

RunResult run(const RunConfig& config, const RoundTraceFn& trace = {});
RunResult run_with_deployment(const RunConfig& config, Deployment deployment,
                              const RoundTraceFn& trace = {});

}  // namespace wsnsim
