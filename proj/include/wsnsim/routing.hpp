#pragma once

#include <vector>

#include "wsnsim/topology.hpp"

namespace wsnsim {

enum class HopKind { Direct, Forward, Stuck };

struct HopDecision {
  HopKind kind = HopKind::Stuck;
  int next_node = -1;  // set for Forward
};

/// What to do when greedy forwarding has no neighbor strictly closer to the
/// target: transmit straight to the target at the true distance, or drop.
enum class StuckPolicy { DirectFallback, Drop };

enum class RouteStatus { Delivered, DroppedStuck, DroppedDead };

/// Snapshot the greedy rules evaluate against. Adjacency lists are sorted by
/// node index; alive flags gate the eligible relays.
struct RoutingContext {
  const Deployment& dep;
  const std::vector<std::vector<int>>& adjacency;
  const std::vector<char>& alive;
  double coverage_radius;
};

std::vector<std::vector<int>> build_adjacency(const Deployment& dep, double coverage_radius);

/// Intra-cluster rule: direct to the CH when in coverage, otherwise forward
/// to the same-cluster alive neighbor strictly closer to the CH that
/// minimises the distance to it (ties to the lower index).
HopDecision next_intra_hop(int current, int cluster_head, const std::vector<int>& membership,
                           const RoutingContext& ctx);

/// Inter-cluster rule: direct to the sink when in coverage, otherwise forward
/// to the alive neighbor of any cluster strictly closer to the sink that
/// minimises the distance to it (ties to the lower index).
HopDecision next_inter_hop(int current, Point target_sink, const RoutingContext& ctx);

/// Pure route trace over a fixed snapshot (no energy accounting). path holds
/// the successive packet holders starting at the origin; hop_count counts
/// transmissions including the final direct leg.
struct RouteResult {
  std::vector<int> path;
  RouteStatus status = RouteStatus::DroppedStuck;
  bool stuck_fallback = false;
  int hop_count = 0;
};

RouteResult route_to_cluster_head(int origin, int cluster_head, const std::vector<int>& membership,
                                  const RoutingContext& ctx, StuckPolicy policy);
RouteResult route_to_sink(int origin, Point sink, const RoutingContext& ctx, StuckPolicy policy);

}  // namespace wsnsim
