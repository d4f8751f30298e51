#pragma once

#include <span>
#include <utility>
#include <vector>

#include "wsnsim/topology.hpp"

namespace wsnsim {

/// The three timer-based CH election rules. The timer mechanism is evaluated
/// analytically: the member with the smallest waiting time wins.
enum class ElectionModel {
  CentreDistance = 1,          // d(node, cluster centre) / residual
  SinkDistanceConstrained = 2, // candidacy gate * d(node, target sink) / residual
  SinkDistanceFree = 3,        // d(node, target sink) / residual
};

/// Candidacy gate of the constrained model. LiteralY admits nodes below the
/// cluster centre (sinks on the y = 0 side); TowardSink generalises the same
/// idea to arbitrary sink placements.
enum class CandidacyMode { LiteralY, TowardSink };

/// 1 for a CH candidate, +infinity otherwise.
double candidacy(Point node, Point cluster_center, Point target_sink, CandidacyMode mode);

/// Waiting time Tw for one member; meters per joule. Requires residual > 0.
double waiting_time(Point node, Point cluster_center, Point target_sink,
                    ElectionModel model, CandidacyMode mode, double residual);

struct ElectionOutcome {
  int cluster_id = -1;
  int winner = -1;
  std::vector<std::pair<int, double>> waiting_times;  // (node index, Tw), member order
  bool fallback_used = false;  // constrained model had no candidate; free rule applied
};

/// Winner is the argmin of the finite waiting times, ties to the lower node
/// index. alive_members and residuals run in parallel and must be nonempty.
ElectionOutcome elect(const Cluster& cluster, std::span<const int> alive_members,
                      std::span<const double> residuals, ElectionModel model,
                      CandidacyMode mode, const Deployment& dep, Point target_sink);

}  // namespace wsnsim
