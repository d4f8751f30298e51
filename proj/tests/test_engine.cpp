#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wsnsim/engine.hpp"
#include "wsnsim/packets.hpp"

using namespace wsnsim;

namespace {

Deployment fixed_deployment(double side, std::vector<Point> nodes) {
  Deployment dep;
  dep.area_side = side;
  dep.nodes = std::move(nodes);
  return dep;
}

RunConfig single_node_config() {
  RunConfig cfg;
  cfg.node_count = 1;
  cfg.placement = SinkPlacementModel::OneSide;
  cfg.sink_count = 1;
  cfg.tier_count = 1;
  cfg.energy.initial_energy = 0.01;
  return cfg;
}

}  // namespace

TEST_CASE("single-node closed-form lifetime") {
  // One node 50 m above the single side sink at (250, 0); each round costs one
  // direct inter transmission of 464 bits.
  const RunConfig cfg = single_node_config();
  const auto res = run_with_deployment(cfg, fixed_deployment(500, {{250, 50}}));

  const double per_round = tx_energy(static_cast<double>(inter_packet_bits(1)), 50.0, cfg.energy);
  CHECK(per_round == doctest::Approx(34.8e-6).epsilon(1e-12));
  const long expected = static_cast<long>(std::floor(cfg.energy.initial_energy / per_round));
  CHECK(expected == 287);
  CHECK(res.lifetime_rounds == 287);
  CHECK(res.first_dead_node == 0);
  CHECK_FALSE(res.truncated);
  CHECK(res.rounds_executed == 288);  // the death round still ran
}

TEST_CASE("closed form holds for any one-node topology") {
  for (double y : {20.0, 90.0, 130.0, 260.0}) {
    RunConfig cfg = single_node_config();
    cfg.energy.initial_energy = 0.02;
    const auto res = run_with_deployment(cfg, fixed_deployment(500, {{250, y}}));
    const double d = y;  // sink at (250, 0)
    const double per_round = tx_energy(static_cast<double>(inter_packet_bits(1)), d, cfg.energy);
    CHECK(res.lifetime_rounds ==
          static_cast<long>(std::floor(cfg.energy.initial_energy / per_round)));
  }
}

TEST_CASE("zero initial energy means zero lifetime") {
  RunConfig cfg = single_node_config();
  cfg.energy.initial_energy = 0.0;
  const auto res = run(cfg);
  CHECK(res.lifetime_rounds == 0);
  CHECK(res.first_dead_node == 0);
}

TEST_CASE("same config and seed replays bit-identically") {
  RunConfig cfg;
  cfg.node_count = 60;
  cfg.placement = SinkPlacementModel::Around;
  cfg.sink_count = 4;
  cfg.tier_count = 2;
  cfg.sizing = ClusterSizingModel::SmallerNearSink;
  cfg.energy.initial_energy = 0.005;
  cfg.seed = 42;

  const auto a = run(cfg);
  const auto b = run(cfg);
  CHECK(a.lifetime_rounds == b.lifetime_rounds);
  CHECK(a.first_dead_node == b.first_dead_node);
  CHECK(a.rounds_executed == b.rounds_executed);
  CHECK(a.total_energy_spent == b.total_energy_spent);  // bitwise
  REQUIRE(a.node_consumed.size() == b.node_consumed.size());
  for (std::size_t i = 0; i < a.node_consumed.size(); ++i) {
    CHECK(a.node_consumed[i] == b.node_consumed[i]);
    CHECK(a.node_residual[i] == b.node_residual[i]);
  }
  CHECK(a.totals.intra_sent == b.totals.intra_sent);
  CHECK(a.totals.inter_delivered == b.totals.inter_delivered);
}

TEST_CASE("run_round is deterministic for identical engines") {
  RunConfig cfg;
  cfg.node_count = 40;
  cfg.energy.initial_energy = 0.01;
  cfg.seed = 9;
  Engine e1(cfg);
  Engine e2(cfg);
  for (int r = 0; r < 5; ++r) {
    const RoundReport a = e1.run_round();
    const RoundReport b = e2.run_round();
    CHECK(a.round_index == b.round_index);
    CHECK(a.energy_spent == b.energy_spent);  // bitwise
    CHECK(a.intra_sent == b.intra_sent);
    CHECK(a.intra_delivered == b.intra_delivered);
    CHECK(a.inter_sent == b.inter_sent);
    CHECK(a.deaths == b.deaths);
    REQUIRE(a.elections.size() == b.elections.size());
    for (std::size_t i = 0; i < a.elections.size(); ++i)
      CHECK(a.elections[i].winner == b.elections[i].winner);
  }
}

TEST_CASE("ledger conservation holds exactly") {
  RunConfig cfg;
  cfg.node_count = 50;
  cfg.placement = SinkPlacementModel::Center;
  cfg.sink_count = 1;
  cfg.energy.initial_energy = 0.004;
  cfg.seed = 3;
  const auto res = run(cfg);
  for (std::size_t i = 0; i < res.node_consumed.size(); ++i) {
    CHECK(res.node_residual[i] == cfg.energy.initial_energy - res.node_consumed[i]);
    CHECK(res.node_residual[i] >= 0.0);
  }
  double spent = 0.0;
  for (double c : res.node_consumed) spent += c;
  CHECK(spent == res.total_energy_spent);  // same summation order, bitwise
  CHECK(res.total_initial_energy == doctest::Approx(50 * 0.004).epsilon(1e-15));
}

TEST_CASE("election broadcast: sole member costs nothing, toggle isolates the announcement") {
  // Three-node cluster in a corner, far from everything else.
  const Deployment dep = fixed_deployment(
      500, {{20, 450}, {20, 410}, {40, 430}});
  RunConfig cfg;
  cfg.node_count = 3;
  cfg.tier_count = 1;
  cfg.base_clusters_per_tier = 1;  // a single cluster covering the field
  cfg.energy.initial_energy = 0.5;
  cfg.max_rounds = 1;

  RunConfig with = cfg;
  with.election_broadcast = true;
  RunConfig without = cfg;
  without.election_broadcast = false;

  const auto on = run_with_deployment(with, dep);
  const auto off = run_with_deployment(without, dep);

  // Same elections in round one (equal residuals), so consumption deltas are
  // exactly the announcement costs.
  int winner = -1;
  double max_delta = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double delta = on.node_consumed[static_cast<std::size_t>(i)] -
                         off.node_consumed[static_cast<std::size_t>(i)];
    if (delta > max_delta) {
      max_delta = delta;
      winner = i;
    }
  }
  // Farthest member from any node is at most hypot(40, 20|20) within the set;
  // winner pays tx at its actual farthest-member radius, listeners pay rx.
  double radius = 0.0;
  for (int i = 0; i < 3; ++i)
    if (i != winner)
      radius = std::max(radius, distance(dep.nodes[static_cast<std::size_t>(i)],
                                         dep.nodes[static_cast<std::size_t>(winner)]));
  CHECK(max_delta == doctest::Approx(tx_energy(128, radius, cfg.energy)).epsilon(1e-9));
  for (int i = 0; i < 3; ++i) {
    if (i == winner) continue;
    const double delta = on.node_consumed[static_cast<std::size_t>(i)] -
                         off.node_consumed[static_cast<std::size_t>(i)];
    CHECK(delta == doctest::Approx(rx_energy(128, cfg.energy)).epsilon(1e-9));
  }

  // A sole member has nobody to announce to.
  RunConfig solo = single_node_config();
  solo.max_rounds = 1;
  solo.energy.initial_energy = 0.5;
  RunConfig solo_off = solo;
  solo_off.election_broadcast = false;
  const auto s_on = run_with_deployment(solo, fixed_deployment(500, {{250, 50}}));
  const auto s_off = run_with_deployment(solo_off, fixed_deployment(500, {{250, 50}}));
  CHECK(s_on.node_consumed[0] == s_off.node_consumed[0]);
}

TEST_CASE("mac overhead: per-hop frame accounting and lifetime ordering") {
  // Single node 50 m from the sink: one direct data hop per round.
  RunConfig base = single_node_config();
  base.energy.initial_energy = 0.5;
  base.max_rounds = 1;
  RunConfig with_mac = base;
  with_mac.mac_overhead = true;

  const auto plain = run_with_deployment(base, fixed_deployment(500, {{250, 50}}));
  const auto mac = run_with_deployment(with_mac, fixed_deployment(500, {{250, 50}}));

  const double bits = static_cast<double>(inter_packet_bits(1));
  CHECK(plain.node_consumed[0] == tx_energy(bits, 50, base.energy));
  // RTS rides the data leg; the sink answers CTS and ACK for free but the
  // sender still receives them.
  CHECK(mac.node_consumed[0] ==
        tx_energy(bits + 160, 50, base.energy) + rx_energy(112 + 112, base.energy));

  RunConfig full = base;
  full.energy.initial_energy = 0.01;
  full.max_rounds = 100000;
  RunConfig full_mac = full;
  full_mac.mac_overhead = true;
  const auto life_plain = run_with_deployment(full, fixed_deployment(500, {{250, 50}}));
  const auto life_mac = run_with_deployment(full_mac, fixed_deployment(500, {{250, 50}}));
  CHECK(life_mac.lifetime_rounds <= life_plain.lifetime_rounds);

  const MacOverhead off = mac_bits(false);
  CHECK(off.sender_tx_bits == 0.0);
  CHECK(off.receiver_tx_bits == 0.0);
  const MacOverhead on = mac_bits(true);
  CHECK(on.sender_tx_bits == 160.0);
  CHECK(on.sender_rx_bits == 224.0);
  CHECK(on.receiver_tx_bits == 224.0);
  CHECK(on.receiver_rx_bits == 160.0);
}

TEST_CASE("doubling the battery at least doubles the lifetime minus slack") {
  RunConfig cfg;
  cfg.node_count = 40;
  cfg.energy.initial_energy = 0.002;
  cfg.seed = 17;
  const auto one = run(cfg);
  RunConfig cfg2 = cfg;
  cfg2.energy.initial_energy = 0.004;
  const auto two = run(cfg2);
  CHECK(two.lifetime_rounds >= 2 * one.lifetime_rounds - 1);
}

TEST_CASE("max_rounds truncation is flagged") {
  RunConfig cfg = single_node_config();
  cfg.energy.initial_energy = 0.5;
  cfg.max_rounds = 10;
  const auto res = run_with_deployment(cfg, fixed_deployment(500, {{250, 50}}));
  CHECK(res.truncated);
  CHECK(res.lifetime_rounds == 10);
  CHECK(res.first_dead_node == -1);
}

TEST_CASE("per-node energy is consistent with the relay counters") {
  RunConfig cfg;
  cfg.node_count = 80;
  cfg.placement = SinkPlacementModel::OneSide;
  cfg.energy.initial_energy = 0.01;
  cfg.seed = 8;
  const auto res = run(cfg);
  // Every relayed packet cost at least the data-bit electronics on both
  // directions of the relay.
  const double per_relay_floor = 2.0 * 416.0 * cfg.energy.e_elec;
  for (std::size_t i = 0; i < res.node_consumed.size(); ++i)
    CHECK(res.node_consumed[i] >=
          static_cast<double>(res.node_relayed[i]) * per_relay_floor - 1e-12);
}

TEST_CASE("death round completes and lifetime counts only clean rounds") {
  RunConfig cfg;
  cfg.node_count = 30;
  cfg.energy.initial_energy = 0.001;
  cfg.seed = 21;
  std::vector<RoundReport> reports;
  const auto res = run(cfg, [&](const RoundReport& r) { reports.push_back(r); });
  REQUIRE_FALSE(res.truncated);
  REQUIRE(res.rounds_executed == static_cast<long>(reports.size()));
  for (std::size_t i = 0; i + 1 < reports.size(); ++i) CHECK(reports[i].deaths.empty());
  CHECK_FALSE(reports.back().deaths.empty());
  CHECK(reports.back().deaths.front() == res.first_dead_node);
  CHECK(res.lifetime_rounds == res.rounds_executed - 1);
  for (const auto& r : reports) {
    CHECK(r.intra_delivered <= r.intra_sent);
    CHECK(r.inter_delivered <= r.inter_sent);
    CHECK(r.energy_spent >= 0.0);
  }
}

TEST_CASE("hand-traced round: every debit, payer and order") {
  // One cluster spanning the field, side sink at (250, 0), three nodes on the
  // x = 250 line: A(y=40), B(y=120), C(y=210). With equal batteries the
  // centre-distance election picks C (40 m from the cluster centre).
  // Intra: A forwards through B (A->B 80 m, B->C 90 m direct), B sends direct.
  // Inter: 1296 bits relay C->B->A then A->sink at 40 m.
  RunConfig cfg;
  cfg.node_count = 3;
  cfg.tier_count = 1;
  cfg.base_clusters_per_tier = 1;
  cfg.energy.initial_energy = 0.5;
  cfg.max_rounds = 1;
  const auto& p = cfg.energy;
  const Deployment dep = fixed_deployment(500, {{250, 40}, {250, 120}, {250, 210}});

  std::vector<RoundReport> reports;
  const auto res = run_with_deployment(cfg, dep, [&](const RoundReport& r) {
    reports.push_back(r);
  });
  REQUIRE(reports.size() == 1);
  REQUIRE(reports[0].elections.size() == 1);
  CHECK(reports[0].elections[0].winner == 2);
  CHECK(reports[0].intra_sent == 2);
  CHECK(reports[0].intra_delivered == 2);
  CHECK(reports[0].inter_sent == 1);
  CHECK(reports[0].inter_delivered == 1);
  CHECK(reports[0].stuck_events == 0);
  CHECK(reports[0].deaths.empty());

  const double inter_bits = static_cast<double>(inter_packet_bits(3));
  CHECK(inter_bits == 1296.0);

  // Per-node expected ledgers accumulated in the engine's event order
  // (sender debited before receiver on every hop).
  double a = 0.0;
  a += rx_energy(128, p);              // hears the announcement
  a += tx_energy(416, 80, p);          // own report toward B
  a += rx_energy(inter_bits, p);       // inter relay, receive from B
  a += tx_energy(inter_bits, 40, p);   // final leg to the sink
  double b = 0.0;
  b += rx_energy(128, p);
  b += rx_energy(416, p);              // A's report in
  b += tx_energy(416, 90, p);          // A's report out, direct to C
  b += tx_energy(416, 90, p);          // own report, direct to C
  b += rx_energy(inter_bits, p);       // inter relay, receive from C
  b += tx_energy(inter_bits, 80, p);   // inter relay, forward to A
  double c = 0.0;
  c += tx_energy(128, 170, p);         // announcement at the farthest-member radius
  c += rx_energy(416, p);              // A's report
  c += rx_energy(416, p);              // B's report
  c += tx_energy(inter_bits, 90, p);   // aggregate toward B

  CHECK(res.node_consumed[0] == a);
  CHECK(res.node_consumed[1] == b);
  CHECK(res.node_consumed[2] == c);
  CHECK(res.node_relayed[0] == 1);  // one inter forward
  CHECK(res.node_relayed[1] == 2);  // A's intra packet and the inter packet
  CHECK(res.node_relayed[2] == 0);  // CH receives as destination, not relay
}

TEST_CASE("a CH death during its announcement silences the cluster for the round") {
  // Two-node cluster; the winner can afford nothing, so it dies on the
  // announcement and the member's packet is dropped without proceeds.
  RunConfig cfg;
  cfg.node_count = 2;
  cfg.tier_count = 1;
  cfg.base_clusters_per_tier = 1;
  cfg.energy.initial_energy = 8e-6;  // below tx_energy(128, 40)
  const Deployment dep = fixed_deployment(500, {{250, 230}, {250, 270}});

  std::vector<RoundReport> reports;
  const auto res = run_with_deployment(cfg, dep, [&](const RoundReport& r) {
    reports.push_back(r);
  });
  REQUIRE(reports.size() == 1);
  CHECK(res.lifetime_rounds == 0);
  CHECK(reports[0].deaths.size() == 1);
  CHECK(res.first_dead_node == reports[0].deaths[0]);
  CHECK(reports[0].intra_sent == 1);
  CHECK(reports[0].intra_delivered == 0);
  CHECK(reports[0].inter_sent == 0);
  // The surviving member paid nothing.
  const int alive_node = res.first_dead_node == 0 ? 1 : 0;
  CHECK(res.node_consumed[static_cast<std::size_t>(alive_node)] == 0.0);
}

TEST_CASE("engine rejects misuse") {
  RunConfig cfg = single_node_config();
  cfg.energy.initial_energy = -1.0;
  CHECK_THROWS(run(cfg));

  RunConfig mismatch = single_node_config();
  mismatch.node_count = 2;
  CHECK_THROWS_AS(run_with_deployment(mismatch, fixed_deployment(500, {{10, 10}})),
                  std::invalid_argument);
}
