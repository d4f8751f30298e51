#include "wsnsim/election.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsnsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double candidacy(Point node, Point cluster_center, Point target_sink, CandidacyMode mode) {
  if (mode == CandidacyMode::LiteralY)
    return node.y < cluster_center.y ? 1.0 : kInf;
  return distance(node, target_sink) < distance(cluster_center, target_sink) ? 1.0 : kInf;
}

double waiting_time(Point node, Point cluster_center, Point target_sink,
                    ElectionModel model, CandidacyMode mode, double residual) {
  if (!(residual > 0.0)) throw std::invalid_argument("waiting_time: residual must be positive");
  switch (model) {
    case ElectionModel::CentreDistance:
      return distance(node, cluster_center) / residual;
    case ElectionModel::SinkDistanceConstrained:
      if (std::isinf(candidacy(node, cluster_center, target_sink, mode))) return kInf;
      return distance(node, target_sink) / residual;
    case ElectionModel::SinkDistanceFree:
      return distance(node, target_sink) / residual;
  }
  return kInf;
}

ElectionOutcome elect(const Cluster& cluster, std::span<const int> alive_members,
                      std::span<const double> residuals, ElectionModel model,
                      CandidacyMode mode, const Deployment& dep, Point target_sink) {
  if (alive_members.empty())
    throw std::invalid_argument("elect: no alive members (cluster is inactive)");
  if (alive_members.size() != residuals.size())
    throw std::invalid_argument("elect: members and residuals differ in size");

  ElectionOutcome out;
  out.cluster_id = cluster.id;
  out.waiting_times.reserve(alive_members.size());

  auto fill = [&](ElectionModel m) {
    out.waiting_times.clear();
    for (std::size_t i = 0; i < alive_members.size(); ++i) {
      const Point p = dep.nodes.at(static_cast<std::size_t>(alive_members[i]));
      out.waiting_times.emplace_back(
          alive_members[i], waiting_time(p, cluster.center, target_sink, m, mode, residuals[i]));
    }
  };

  auto pick = [&] {
    int winner = -1;
    double best = kInf;
    for (const auto& [idx, tw] : out.waiting_times) {
      if (tw < best || (tw == best && winner >= 0 && idx < winner)) {
        best = tw;
        winner = idx;
      }
    }
    return winner;
  };

  fill(model);
  out.winner = pick();
  if (out.winner < 0 && model == ElectionModel::SinkDistanceConstrained) {
    // No member passes the candidacy gate; fall back to the unconstrained
    // sink-distance rule so the cluster still gets a head.
    fill(ElectionModel::SinkDistanceFree);
    out.winner = pick();
    out.fallback_used = true;
  }
  return out;
}

}  // namespace wsnsim
