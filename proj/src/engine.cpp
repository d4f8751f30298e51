#include "wsnsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "wsnsim/packets.hpp"

namespace wsnsim {

namespace {

constexpr double kRtsBits = 160.0;
constexpr double kCtsBits = 112.0;
constexpr double kAckBits = 112.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool node_ids_unique(const Deployment& dep) {
  std::set<NodeId> ids;
  for (const Point& p : dep.nodes)
    if (!ids.insert(encode_node_id(p, dep.area_side)).second) return false;
  return true;
}

}  // namespace

MacOverhead mac_bits(bool mac_overhead_enabled) {
  if (!mac_overhead_enabled) return {};
  return {kRtsBits, kCtsBits + kAckBits, kCtsBits + kAckBits, kRtsBits};
}

CandidacyMode resolve_candidacy(CandidacyConfig cfg, SinkPlacementModel placement) {
  switch (cfg) {
    case CandidacyConfig::LiteralY: return CandidacyMode::LiteralY;
    case CandidacyConfig::TowardSink: return CandidacyMode::TowardSink;
    case CandidacyConfig::Auto:
      return placement == SinkPlacementModel::OneSide ? CandidacyMode::LiteralY
                                                      : CandidacyMode::TowardSink;
  }
  return CandidacyMode::TowardSink;
}

Engine::Engine(const RunConfig& config)
    : cfg_(config), candidacy_mode_(resolve_candidacy(config.candidacy, config.placement)) {
  // A quantized-id collision is resolved by re-seeding the field
  // deterministically until every node id is unique.
  std::uint64_t seed = cfg_.seed;
  for (int attempt = 0; attempt < 256; ++attempt) {
    dep_ = deploy_nodes(seed, cfg_.node_count, cfg_.area_side);
    if (node_ids_unique(dep_)) {
      init();
      return;
    }
    seed = splitmix64(seed);
  }
  throw std::runtime_error("Engine: could not find a collision-free deployment");
}

Engine::Engine(const RunConfig& config, Deployment deployment)
    : cfg_(config), candidacy_mode_(resolve_candidacy(config.candidacy, config.placement)),
      dep_(std::move(deployment)) {
  if (static_cast<int>(dep_.nodes.size()) != cfg_.node_count)
    throw std::invalid_argument("Engine: deployment size does not match node_count");
  if (dep_.area_side != cfg_.area_side)
    throw std::invalid_argument("Engine: deployment area does not match the config");
  if (!node_ids_unique(dep_))
    throw std::invalid_argument("Engine: pinned deployment has node id collisions");
  init();
}

void Engine::init() {
  const auto sinks = place_sinks(cfg_.placement, cfg_.sink_count, cfg_.area_side);
  PartitionKnobs knobs;
  knobs.growth_ratio = cfg_.growth_ratio;
  knobs.base_clusters_per_tier = cfg_.base_clusters_per_tier;
  knobs.coverage_radius = cfg_.coverage_radius;
  plan_ = partition(cfg_.area_side, sinks, cfg_.placement, cfg_.tier_count, cfg_.sizing, knobs);
  membership_ = assign_clusters(dep_, plan_);
  populate_members(plan_, membership_);
  adjacency_ = build_adjacency(dep_, cfg_.coverage_radius);

  const std::size_t n = dep_.nodes.size();
  batteries_.assign(n, Battery(cfg_.energy.initial_energy));
  alive_.assign(n, 1);
  relayed_.assign(n, 0);
  dist_to_center_.resize(n);
  dist_to_target_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Cluster& cl = plan_.clusters[static_cast<std::size_t>(membership_[i])];
    dist_to_center_[i] = distance(dep_.nodes[i], cl.center);
    dist_to_target_[i] = distance(dep_.nodes[i], plan_.sinks[static_cast<std::size_t>(cl.target_sink_index)]);
  }
}

int Engine::alive_count() const {
  int n = 0;
  for (char a : alive_) n += a != 0;
  return n;
}

void Engine::record_death(int node, RoundReport& report) {
  alive_[static_cast<std::size_t>(node)] = 0;
  report.deaths.push_back(node);
}

// Charges one data hop. Sender pays first; the failed side kills the packet.
bool Engine::charge_hop(int sender, int receiver, bool receiver_is_sink, double dist, double bits,
                        RoundReport& report) {
  const MacOverhead mo = mac_bits(cfg_.mac_overhead);

  Battery& sb = batteries_[static_cast<std::size_t>(sender)];
  double cost = tx_energy(bits + mo.sender_tx_bits, dist, cfg_.energy);
  if (mo.sender_rx_bits > 0.0) cost += rx_energy(mo.sender_rx_bits, cfg_.energy);
  double before = sb.consumed();
  const DebitStatus st = sb.debit(cost);
  report.energy_spent += sb.consumed() - before;
  if (st == DebitStatus::Died) {
    record_death(sender, report);
    return false;
  }

  if (receiver_is_sink) return true;  // sinks are energy-unconstrained

  Battery& rb = batteries_[static_cast<std::size_t>(receiver)];
  double rcost = rx_energy(bits + mo.receiver_rx_bits, cfg_.energy);
  if (mo.receiver_tx_bits > 0.0) rcost += tx_energy(mo.receiver_tx_bits, dist, cfg_.energy);
  before = rb.consumed();
  const DebitStatus rst = rb.debit(rcost);
  report.energy_spent += rb.consumed() - before;
  if (rst == DebitStatus::Died) {
    record_death(receiver, report);
    return false;
  }
  return true;
}

// Walks one packet to its destination, recomputing the greedy choice after
// every charge so mid-route deaths are visible to the next step.
RouteStatus Engine::deliver(int origin, int cluster_head, bool to_sink, Point sink, double bits,
                            RoundReport& report) {
  const RoutingContext ctx{dep_, adjacency_, alive_, cfg_.coverage_radius};
  int current = origin;
  const std::size_t guard = dep_.nodes.size() + 2;
  for (std::size_t step = 0; step < guard; ++step) {
    const HopDecision d = to_sink ? next_inter_hop(current, sink, ctx)
                                  : next_intra_hop(current, cluster_head, membership_, ctx);
    switch (d.kind) {
      case HopKind::Direct: {
        const double dist_final =
            to_sink ? distance(dep_.nodes[static_cast<std::size_t>(current)], sink)
                    : distance(dep_.nodes[static_cast<std::size_t>(current)],
                               dep_.nodes[static_cast<std::size_t>(cluster_head)]);
        return charge_hop(current, to_sink ? -1 : cluster_head, to_sink, dist_final, bits, report)
                   ? RouteStatus::Delivered
                   : RouteStatus::DroppedDead;
      }
      case HopKind::Forward: {
        const int next = d.next_node;
        const double dist_hop = distance(dep_.nodes[static_cast<std::size_t>(current)],
                                         dep_.nodes[static_cast<std::size_t>(next)]);
        if (!charge_hop(current, next, false, dist_hop, bits, report))
          return RouteStatus::DroppedDead;
        ++relayed_[static_cast<std::size_t>(next)];
        current = next;
        break;
      }
      case HopKind::Stuck: {
        ++report.stuck_events;
        if (cfg_.stuck_policy == StuckPolicy::Drop) return RouteStatus::DroppedStuck;
        // Long-range direct leg at the true distance.
        const double dist_final =
            to_sink ? distance(dep_.nodes[static_cast<std::size_t>(current)], sink)
                    : distance(dep_.nodes[static_cast<std::size_t>(current)],
                               dep_.nodes[static_cast<std::size_t>(cluster_head)]);
        return charge_hop(current, to_sink ? -1 : cluster_head, to_sink, dist_final, bits, report)
                   ? RouteStatus::Delivered
                   : RouteStatus::DroppedDead;
      }
    }
  }
  throw std::logic_error("Engine::deliver: walk exceeded the node count (progress violated)");
}

RoundReport Engine::run_round() {
  if (alive_count() == 0) throw std::logic_error("run_round: no alive nodes");

  RoundReport report;
  report.round_index = ++round_;

  // Phase 1: elections, from the round-start residuals. Members with zero
  // residual cannot time out first and are excluded with the dead ones.
  std::vector<int> cluster_head(plan_.clusters.size(), -1);
  std::vector<int> members;
  std::vector<double> residuals;
  for (const Cluster& cl : plan_.clusters) {
    members.clear();
    residuals.clear();
    for (int m : cl.member_indices) {
      if (!alive_[static_cast<std::size_t>(m)]) continue;
      const double res = batteries_[static_cast<std::size_t>(m)].residual();
      if (res > 0.0) {
        members.push_back(m);
        residuals.push_back(res);
      }
    }
    if (members.empty()) continue;  // inactive this round
    ElectionOutcome outcome =
        elect(cl, members, residuals, cfg_.election, candidacy_mode_, dep_,
              plan_.sinks[static_cast<std::size_t>(cl.target_sink_index)]);
    cluster_head[static_cast<std::size_t>(cl.id)] = outcome.winner;
    report.elections.push_back(std::move(outcome));
  }

  // Phase 2: leadership announcements. A sole member has nobody to tell.
  if (cfg_.election_broadcast) {
    for (const Cluster& cl : plan_.clusters) {
      int& ch = cluster_head[static_cast<std::size_t>(cl.id)];
      if (ch < 0) continue;
      double radius = 0.0;
      int listeners = 0;
      for (int m : cl.member_indices) {
        if (m == ch || !alive_[static_cast<std::size_t>(m)]) continue;
        ++listeners;
        radius = std::max(radius, distance(dep_.nodes[static_cast<std::size_t>(m)],
                                           dep_.nodes[static_cast<std::size_t>(ch)]));
      }
      if (listeners == 0) continue;

      Battery& wb = batteries_[static_cast<std::size_t>(ch)];
      double before = wb.consumed();
      const DebitStatus st = wb.debit(tx_energy(cfg_.ctrl_bits, radius, cfg_.energy));
      report.energy_spent += wb.consumed() - before;
      if (st == DebitStatus::Died) {
        record_death(ch, report);
        ch = -1;  // headless cluster: its round traffic is lost
        continue;
      }
      for (int m : cl.member_indices) {
        if (m == ch || !alive_[static_cast<std::size_t>(m)]) continue;
        Battery& mb = batteries_[static_cast<std::size_t>(m)];
        before = mb.consumed();
        const DebitStatus mst = mb.debit(rx_energy(cfg_.ctrl_bits, cfg_.energy));
        report.energy_spent += mb.consumed() - before;
        if (mst == DebitStatus::Died) record_death(m, report);
      }
    }
  }

  // Phase 3: every alive plain node reports once to its CH.
  for (const Cluster& cl : plan_.clusters) {
    const int ch = cluster_head[static_cast<std::size_t>(cl.id)];
    for (int m : cl.member_indices) {
      if (m == ch || !alive_[static_cast<std::size_t>(m)]) continue;
      ++report.intra_sent;
      if (ch < 0 || !alive_[static_cast<std::size_t>(ch)]) continue;  // lost
      if (deliver(m, ch, false, {}, intra_packet_bits(), report) == RouteStatus::Delivered)
        ++report.intra_delivered;
    }
  }

  // Phases 4 and 5: aggregation and the inter-cluster report.
  for (const Cluster& cl : plan_.clusters) {
    const int ch = cluster_head[static_cast<std::size_t>(cl.id)];
    if (ch < 0 || !alive_[static_cast<std::size_t>(ch)]) continue;
    int alive_members = 0;
    for (int m : cl.member_indices) alive_members += alive_[static_cast<std::size_t>(m)] != 0;
    const double bits = static_cast<double>(inter_packet_bits(alive_members));

    if (cfg_.energy.e_da > 0.0) {
      Battery& hb = batteries_[static_cast<std::size_t>(ch)];
      const double before = hb.consumed();
      const DebitStatus st =
          hb.debit(cfg_.energy.e_da * static_cast<double>(intra_packet_bits()) * alive_members);
      report.energy_spent += hb.consumed() - before;
      if (st == DebitStatus::Died) {
        record_death(ch, report);
        continue;
      }
    }

    ++report.inter_sent;
    const Point sink = plan_.sinks[static_cast<std::size_t>(cl.target_sink_index)];
    if (deliver(ch, -1, true, sink, bits, report) == RouteStatus::Delivered)
      ++report.inter_delivered;
  }

  return report;
}

namespace {

RunResult drive(Engine& engine, const RunConfig& config, const RoundTraceFn& trace) {
  RunResult result;
  result.config = config;

  const std::size_t n = engine.deployment().nodes.size();

  // A node deployed with no usable charge is dead on arrival.
  if (!(config.energy.initial_energy > 0.0)) {
    result.lifetime_rounds = 0;
    result.first_dead_node = 0;
    result.node_consumed.assign(n, 0.0);
    result.node_residual.assign(n, config.energy.initial_energy);
    result.node_relayed.assign(n, 0);
    return result;
  }

  bool death_seen = false;
  for (long r = 1; r <= config.max_rounds; ++r) {
    const RoundReport report = engine.run_round();
    if (trace) trace(report);
    result.rounds_executed = r;
    result.totals.intra_sent += report.intra_sent;
    result.totals.intra_delivered += report.intra_delivered;
    result.totals.inter_sent += report.inter_sent;
    result.totals.inter_delivered += report.inter_delivered;
    result.totals.stuck_events += report.stuck_events;
    result.totals.elections_held += static_cast<long>(report.elections.size());
    for (const ElectionOutcome& e : report.elections)
      result.totals.fallback_elections += e.fallback_used ? 1 : 0;
    if (!report.deaths.empty()) {
      result.lifetime_rounds = r - 1;
      result.first_dead_node = report.deaths.front();
      death_seen = true;
      break;
    }
  }
  if (!death_seen) {
    result.lifetime_rounds = config.max_rounds;
    result.truncated = true;
  }

  result.node_consumed.resize(n);
  result.node_residual.resize(n);
  result.node_relayed = engine.node_relayed();
  for (std::size_t i = 0; i < n; ++i) {
    result.node_consumed[i] = engine.batteries()[i].consumed();
    result.node_residual[i] = engine.batteries()[i].residual();
    result.total_initial_energy += engine.batteries()[i].initial();
    result.total_energy_spent += result.node_consumed[i];
  }
  return result;
}

}  // namespace

RunResult run(const RunConfig& config, const RoundTraceFn& trace) {
  Engine engine(config);
  return drive(engine, config, trace);
}

RunResult run_with_deployment(const RunConfig& config, Deployment deployment,
                              const RoundTraceFn& trace) {
  Engine engine(config, std::move(deployment));
  return drive(engine, config, trace);
}

}  // namespace wsnsim
