#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wsnsim/election.hpp"

using namespace wsnsim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent re-statement of the three waiting-time formulas, used as the
// brute-force oracle for elect().
double oracle_tw(Point node, Point center, Point sink, ElectionModel model, CandidacyMode mode,
                 double residual) {
  const double d_center = std::hypot(node.x - center.x, node.y - center.y);
  const double d_sink = std::hypot(node.x - sink.x, node.y - sink.y);
  switch (model) {
    case ElectionModel::CentreDistance:
      return d_center / residual;
    case ElectionModel::SinkDistanceConstrained: {
      const bool cand = mode == CandidacyMode::LiteralY
                            ? node.y < center.y
                            : d_sink < std::hypot(center.x - sink.x, center.y - sink.y);
      return cand ? d_sink / residual : kInf;
    }
    case ElectionModel::SinkDistanceFree:
      return d_sink / residual;
  }
  return kInf;
}

struct RandomCluster {
  Deployment dep;
  Cluster cluster;
  Point sink;
  std::vector<int> members;
  std::vector<double> residuals;
};

RandomCluster make_random_cluster(std::mt19937_64& rng, int n_members) {
  std::uniform_real_distribution<double> coord(0.0, 500.0);
  std::uniform_real_distribution<double> energy(0.01, 1.0);
  RandomCluster rc;
  rc.dep.area_side = 500;
  rc.cluster.id = 0;
  rc.cluster.center = {coord(rng), coord(rng)};
  rc.sink = {coord(rng), coord(rng)};
  for (int i = 0; i < n_members; ++i) {
    rc.dep.nodes.push_back({coord(rng), coord(rng)});
    rc.members.push_back(i);
    rc.residuals.push_back(energy(rng));
    rc.cluster.member_indices.push_back(i);
  }
  return rc;
}

}  // namespace

TEST_CASE("candidacy gate") {
  // Literal y-rule: strictly below the cluster centre.
  CHECK(candidacy({0, 5}, {0, 10}, {0, 0}, CandidacyMode::LiteralY) == 1.0);
  CHECK(std::isinf(candidacy({0, 10}, {0, 10}, {0, 0}, CandidacyMode::LiteralY)));
  CHECK(std::isinf(candidacy({0, 15}, {0, 10}, {0, 0}, CandidacyMode::LiteralY)));
  // Toward-sink rule: strictly closer to the sink than the centre is.
  CHECK(candidacy({0, 40}, {0, 60}, {0, 0}, CandidacyMode::TowardSink) == 1.0);
  CHECK(std::isinf(candidacy({0, 80}, {0, 60}, {0, 0}, CandidacyMode::TowardSink)));
}

TEST_CASE("waiting time formulas") {
  // Model 1: 10 m from the centre at 0.5 J -> 20.
  CHECK(waiting_time({0, 10}, {0, 0}, {0, 400}, ElectionModel::CentreDistance,
                     CandidacyMode::TowardSink, 0.5) == doctest::Approx(20.0));
  // Model 3: 30 m from the sink at 0.5 J -> 60.
  CHECK(waiting_time({0, 30}, {0, 200}, {0, 0}, ElectionModel::SinkDistanceFree,
                     CandidacyMode::TowardSink, 0.5) == doctest::Approx(60.0));
  // Model 2 non-candidate -> infinite.
  CHECK(std::isinf(waiting_time({0, 80}, {0, 60}, {0, 0}, ElectionModel::SinkDistanceConstrained,
                                CandidacyMode::TowardSink, 0.5)));
  CHECK_THROWS_AS(waiting_time({0, 10}, {0, 0}, {0, 0}, ElectionModel::CentreDistance,
                               CandidacyMode::TowardSink, 0.0),
                  std::invalid_argument);
}

TEST_CASE("elect picks the argmin and breaks ties by index") {
  Deployment dep;
  dep.area_side = 500;
  dep.nodes = {{0, 10}, {0, 15}, {10, 0}};  // distances to centre: 10, 15, 10
  Cluster cl;
  cl.id = 7;
  cl.center = {0, 0};
  const std::vector<int> members{0, 1, 2};
  const std::vector<double> residuals{0.5, 0.5, 0.5};
  const auto out = elect(cl, members, residuals, ElectionModel::CentreDistance,
                         CandidacyMode::TowardSink, dep, {400, 400});
  CHECK(out.cluster_id == 7);
  CHECK(out.winner == 0);  // ties with node 2 resolve to the lower index
  CHECK_FALSE(out.fallback_used);
  CHECK(out.waiting_times.size() == 3);
}

TEST_CASE("single-member cluster elects that member") {
  Deployment dep;
  dep.area_side = 500;
  dep.nodes = {{100, 100}};
  Cluster cl;
  cl.center = {90, 90};
  const std::vector<int> members{0};
  const std::vector<double> residuals{0.25};
  CHECK(elect(cl, members, residuals, ElectionModel::SinkDistanceConstrained,
              CandidacyMode::TowardSink, dep, {0, 0})
            .winner == 0);
}

TEST_CASE("elect with no members is rejected") {
  Deployment dep;
  dep.area_side = 500;
  Cluster cl;
  CHECK_THROWS_AS(elect(cl, {}, {}, ElectionModel::CentreDistance, CandidacyMode::TowardSink, dep,
                        {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("constrained model falls back to the free rule when nobody qualifies") {
  // Three nodes all farther from the sink than the centre is.
  Deployment dep;
  dep.area_side = 500;
  dep.nodes = {{0, 120}, {0, 140}, {30, 130}};
  Cluster cl;
  cl.center = {0, 100};
  const Point sink{0, 0};
  const std::vector<int> members{0, 1, 2};
  const std::vector<double> residuals{0.5, 0.9, 0.7};
  const auto out = elect(cl, members, residuals, ElectionModel::SinkDistanceConstrained,
                         CandidacyMode::TowardSink, dep, sink);
  CHECK(out.fallback_used);

  // Brute-force argmin of the unconstrained rule.
  int best = -1;
  double best_tw = kInf;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const double tw = oracle_tw(dep.nodes[i], cl.center, sink, ElectionModel::SinkDistanceFree,
                                CandidacyMode::TowardSink, residuals[i]);
    if (tw < best_tw) {
      best_tw = tw;
      best = members[i];
    }
  }
  CHECK(out.winner == best);
}

TEST_CASE("property: winner optimality, scale invariance, candidacy soundness") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomCluster rc = make_random_cluster(rng, size(rng));
    const auto model = static_cast<ElectionModel>(1 + static_cast<int>(rng() % 3));
    const auto mode = rng() % 2 == 0 ? CandidacyMode::LiteralY : CandidacyMode::TowardSink;
    const auto out =
        elect(rc.cluster, rc.members, rc.residuals, model, mode, rc.dep, rc.sink);
    REQUIRE(out.winner >= 0);

    const auto effective = out.fallback_used ? ElectionModel::SinkDistanceFree : model;
    double winner_tw = kInf;
    for (std::size_t i = 0; i < rc.members.size(); ++i)
      if (rc.members[i] == out.winner)
        winner_tw = oracle_tw(rc.dep.nodes[i], rc.cluster.center, rc.sink, effective, mode,
                              rc.residuals[i]);
    // No member beats the winner.
    for (std::size_t i = 0; i < rc.members.size(); ++i) {
      const double tw = oracle_tw(rc.dep.nodes[i], rc.cluster.center, rc.sink, effective, mode,
                                  rc.residuals[i]);
      CHECK(tw >= winner_tw);
    }
    // Model 2 winners satisfy the candidacy predicate unless the fallback ran.
    if (model == ElectionModel::SinkDistanceConstrained && !out.fallback_used) {
      const Point p = rc.dep.nodes[static_cast<std::size_t>(out.winner)];
      CHECK(candidacy(p, rc.cluster.center, rc.sink, mode) == 1.0);
    }
    // Scaling every residual by the same factor does not move the argmin.
    for (double c : {0.125, 3.75}) {
      auto scaled = rc.residuals;
      for (double& r : scaled) r *= c;
      const auto out2 = elect(rc.cluster, rc.members, scaled, model, mode, rc.dep, rc.sink);
      CHECK(out2.winner == out.winner);
    }
  }
}

TEST_CASE("property: equal residuals elect the member nearest the reference point") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    RandomCluster rc = make_random_cluster(rng, 12);
    std::fill(rc.residuals.begin(), rc.residuals.end(), 0.5);

    const auto out1 = elect(rc.cluster, rc.members, rc.residuals, ElectionModel::CentreDistance,
                            CandidacyMode::TowardSink, rc.dep, rc.sink);
    int nearest = 0;
    for (int i = 1; i < 12; ++i)
      if (distance(rc.dep.nodes[static_cast<std::size_t>(i)], rc.cluster.center) <
          distance(rc.dep.nodes[static_cast<std::size_t>(nearest)], rc.cluster.center))
        nearest = i;
    CHECK(out1.winner == nearest);

    const auto out3 = elect(rc.cluster, rc.members, rc.residuals, ElectionModel::SinkDistanceFree,
                            CandidacyMode::TowardSink, rc.dep, rc.sink);
    nearest = 0;
    for (int i = 1; i < 12; ++i)
      if (distance(rc.dep.nodes[static_cast<std::size_t>(i)], rc.sink) <
          distance(rc.dep.nodes[static_cast<std::size_t>(nearest)], rc.sink))
        nearest = i;
    CHECK(out3.winner == nearest);
  }
}
