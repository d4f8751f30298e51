#include "wsnsim/routing.hpp"

#include <stdexcept>

namespace wsnsim {

std::vector<std::vector<int>> build_adjacency(const Deployment& dep, double coverage_radius) {
  if (!(coverage_radius > 0.0))
    throw std::invalid_argument("build_adjacency: coverage_radius must be positive");
  const int n = static_cast<int>(dep.nodes.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (distance(dep.nodes[static_cast<std::size_t>(i)],
                   dep.nodes[static_cast<std::size_t>(j)]) <= coverage_radius) {
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
      }
  return adj;  // per-node lists end up sorted by construction
}

HopDecision next_intra_hop(int current, int cluster_head, const std::vector<int>& membership,
                           const RoutingContext& ctx) {
  const auto& nodes = ctx.dep.nodes;
  const Point ch_pos = nodes.at(static_cast<std::size_t>(cluster_head));
  const double d_cur = distance(nodes[static_cast<std::size_t>(current)], ch_pos);
  if (d_cur <= ctx.coverage_radius) return {HopKind::Direct, cluster_head};

  int best = -1;
  double best_d = d_cur;  // candidates must be strictly closer than current
  for (int n : ctx.adjacency[static_cast<std::size_t>(current)]) {
    if (!ctx.alive[static_cast<std::size_t>(n)]) continue;
    if (membership[static_cast<std::size_t>(n)] != membership[static_cast<std::size_t>(current)])
      continue;
    const double d = distance(nodes[static_cast<std::size_t>(n)], ch_pos);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  if (best < 0) return {HopKind::Stuck, -1};
  return {HopKind::Forward, best};
}

HopDecision next_inter_hop(int current, Point target_sink, const RoutingContext& ctx) {
  const auto& nodes = ctx.dep.nodes;
  const double d_cur = distance(nodes[static_cast<std::size_t>(current)], target_sink);
  if (d_cur <= ctx.coverage_radius) return {HopKind::Direct, -1};

  int best = -1;
  double best_d = d_cur;
  for (int n : ctx.adjacency[static_cast<std::size_t>(current)]) {
    if (!ctx.alive[static_cast<std::size_t>(n)]) continue;
    const double d = distance(nodes[static_cast<std::size_t>(n)], target_sink);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  if (best < 0) return {HopKind::Stuck, -1};
  return {HopKind::Forward, best};
}

namespace {

template <typename NextHopFn>
RouteResult trace_route(int origin, NextHopFn&& next_hop, StuckPolicy policy,
                        std::size_t node_count, int final_holder_on_direct) {
  RouteResult out;
  out.path.push_back(origin);
  int current = origin;
  // Strict progress bounds the walk; the guard only trips on a broken rule.
  for (std::size_t step = 0; step <= node_count + 1; ++step) {
    const HopDecision d = next_hop(current);
    switch (d.kind) {
      case HopKind::Direct:
        ++out.hop_count;
        if (final_holder_on_direct >= 0) out.path.push_back(final_holder_on_direct);
        out.status = RouteStatus::Delivered;
        return out;
      case HopKind::Forward:
        ++out.hop_count;
        out.path.push_back(d.next_node);
        current = d.next_node;
        break;
      case HopKind::Stuck:
        if (policy == StuckPolicy::Drop) {
          out.status = RouteStatus::DroppedStuck;
          return out;
        }
        out.stuck_fallback = true;
        ++out.hop_count;  // one long-range direct leg
        if (final_holder_on_direct >= 0) out.path.push_back(final_holder_on_direct);
        out.status = RouteStatus::Delivered;
        return out;
    }
  }
  throw std::logic_error("route: greedy walk exceeded the node count (progress violated)");
}

}  // namespace

RouteResult route_to_cluster_head(int origin, int cluster_head, const std::vector<int>& membership,
                                  const RoutingContext& ctx, StuckPolicy policy) {
  return trace_route(
      origin,
      [&](int cur) { return next_intra_hop(cur, cluster_head, membership, ctx); },
      policy, ctx.dep.nodes.size(), cluster_head);
}

RouteResult route_to_sink(int origin, Point sink, const RoutingContext& ctx, StuckPolicy policy) {
  return trace_route(
      origin,
      [&](int cur) { return next_inter_hop(cur, sink, ctx); },
      policy, ctx.dep.nodes.size(), -1);
}

}  // namespace wsnsim
