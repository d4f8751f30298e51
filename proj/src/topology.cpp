#include "wsnsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace wsnsim {

namespace {

constexpr double kMinBandWidth = 1.0;  // meters; finer tiers are rejected

// Proximity coordinate u grows away from the sinks: y for OneSide, Chebyshev
// radius for Center, boundary depth for Around. cum_area(u) is the field area
// with coordinate below u.
double cum_area(SinkPlacementModel pl, double side, double u) {
  switch (pl) {
    case SinkPlacementModel::OneSide:
      return side * u;
    case SinkPlacementModel::Center:
      return 4.0 * u * u;
    case SinkPlacementModel::Around: {
      const double inner = side - 2.0 * u;
      return side * side - inner * inner;
    }
  }
  return 0.0;
}

double invert_cum_area(SinkPlacementModel pl, double side, double target) {
  switch (pl) {
    case SinkPlacementModel::OneSide:
      return target / side;
    case SinkPlacementModel::Center:
      return std::sqrt(target) / 2.0;
    case SinkPlacementModel::Around:
      return (side - std::sqrt(std::max(0.0, side * side - target))) / 2.0;
  }
  return 0.0;
}

double tier_extent(SinkPlacementModel pl, double side) {
  return pl == SinkPlacementModel::OneSide ? side : side / 2.0;
}

}  // namespace

double Cell::area() const {
  if (kind == Kind::Rect) return (a1 - a0) * (b1 - b0);
  return (b1 - b0) * 4.0 * (a1 * a1 - a0 * a0);
}

bool Cell::contains(Point p) const {
  if (kind == Kind::Rect)
    return p.x >= a0 && p.x <= a1 && p.y >= b0 && p.y <= b1;
  const double c = area_side / 2.0;
  const double qx = p.x - c;
  const double qy = p.y - c;
  const double rho = cheb_radius(qx, qy);
  if (rho < a0 || rho > a1) return false;
  const double f = perimeter_fraction(qx, qy);
  return f >= b0 && f <= b1;
}

Deployment deploy_nodes(std::uint64_t seed, int node_count, double area_side) {
  if (node_count < 1) throw std::invalid_argument("deploy_nodes: node_count must be >= 1");
  if (!(area_side > 0.0)) throw std::invalid_argument("deploy_nodes: area_side must be positive");

  std::mt19937_64 rng(seed);
  // 53-bit mantissa in [0,1); uniform_real_distribution is not pinned by the
  // standard, this mapping is.
  auto draw = [&rng, area_side] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * area_side;
  };

  Deployment dep;
  dep.area_side = area_side;
  dep.seed = seed;
  dep.nodes.reserve(static_cast<std::size_t>(node_count));
  std::set<std::pair<double, double>> seen;
  while (static_cast<int>(dep.nodes.size()) < node_count) {
    const double x = draw();
    const double y = draw();
    if (!seen.insert({x, y}).second) continue;  // duplicate position: re-draw
    dep.nodes.push_back({x, y});
  }
  return dep;
}

std::vector<Point> place_sinks(SinkPlacementModel model, int sink_count, double area_side) {
  if (sink_count < 1) throw std::invalid_argument("place_sinks: sink_count must be >= 1");
  if (!(area_side > 0.0)) throw std::invalid_argument("place_sinks: area_side must be positive");
  if (model == SinkPlacementModel::Center && sink_count != 1)
    throw std::invalid_argument("place_sinks: Center placement requires sink_count == 1");

  std::vector<Point> sinks;
  sinks.reserve(static_cast<std::size_t>(sink_count));
  switch (model) {
    case SinkPlacementModel::OneSide:
      for (int k = 0; k < sink_count; ++k)
        sinks.push_back({area_side * (k + 0.5) / sink_count, 0.0});
      break;
    case SinkPlacementModel::Center:
      sinks.push_back({area_side / 2.0, area_side / 2.0});
      break;
    case SinkPlacementModel::Around: {
      const double c = area_side / 2.0;
      for (int k = 0; k < sink_count; ++k) {
        const Point q = perimeter_point(c, static_cast<double>(k) / sink_count);
        sinks.push_back({c + q.x, c + q.y});
      }
      break;
    }
  }
  return sinks;
}

Point perimeter_point(double half_side, double fraction) {
  const double rho = half_side;
  const double s = fraction * 8.0 * rho;
  if (s <= rho) return {-s, -rho};
  if (s <= 3.0 * rho) return {-rho, -rho + (s - rho)};
  if (s <= 5.0 * rho) return {-rho + (s - 3.0 * rho), rho};
  if (s <= 7.0 * rho) return {rho, rho - (s - 5.0 * rho)};
  return {rho - (s - 7.0 * rho), -rho};
}

double perimeter_fraction(double qx, double qy) {
  const double rho = cheb_radius(qx, qy);
  if (rho == 0.0) return 0.0;
  double s;
  if (qy == -rho) {
    s = qx <= 0.0 ? -qx : 8.0 * rho - qx;
  } else if (qx == -rho) {
    s = rho + (qy + rho);
  } else if (qy == rho) {
    s = 3.0 * rho + (qx + rho);
  } else {  // qx == rho
    s = 5.0 * rho + (rho - qy);
  }
  double f = s / (8.0 * rho);
  if (f >= 1.0) f = 0.0;
  return f;
}

TierPlan partition(double area_side, const std::vector<Point>& sinks,
                   SinkPlacementModel placement, int tier_count,
                   ClusterSizingModel sizing, const PartitionKnobs& knobs) {
  if (!(area_side > 0.0)) throw std::invalid_argument("partition: area_side must be positive");
  if (sinks.empty()) throw std::invalid_argument("partition: sinks must be nonempty");
  if (tier_count < 1) throw std::invalid_argument("partition: tier_count must be >= 1");
  if (!(knobs.growth_ratio > 0.0)) throw std::invalid_argument("partition: growth_ratio must be positive");
  if (knobs.base_clusters_per_tier < 1)
    throw std::invalid_argument("partition: base_clusters_per_tier must be >= 1");
  if (!(knobs.coverage_radius > 0.0))
    throw std::invalid_argument("partition: coverage_radius must be positive");

  const int T = tier_count;
  const double g = sizing == ClusterSizingModel::Equal ? 1.0 : knobs.growth_ratio;
  // Progression exponent per tier, growing away from the sinks for
  // SmallerNearSink and toward them for LargerNearSink.
  auto ratio = [&](int t) {
    switch (sizing) {
      case ClusterSizingModel::SmallerNearSink: return std::pow(g, t);
      case ClusterSizingModel::LargerNearSink: return std::pow(g, T - 1 - t);
      case ClusterSizingModel::Equal: return 1.0;
    }
    return 1.0;
  };

  const double extent = tier_extent(placement, area_side);
  const double total_area = area_side * area_side;

  // Ideal geometric band widths -> band areas.
  double ratio_sum = 0.0;
  for (int t = 0; t < T; ++t) ratio_sum += ratio(t);
  std::vector<double> u(T + 1, 0.0);
  for (int t = 0; t < T; ++t) u[t + 1] = u[t] + extent * ratio(t) / ratio_sum;
  u[T] = extent;
  std::vector<double> band_area(T);
  for (int t = 0; t < T; ++t)
    band_area[t] = cum_area(placement, area_side, u[t + 1]) - cum_area(placement, area_side, u[t]);

  // Per-tier cell-area targets on the same progression, normalised so the
  // expected whole-area cluster count is tier_count * base_clusters_per_tier.
  const double budget = static_cast<double>(T) * knobs.base_clusters_per_tier;
  double weighted = 0.0;
  for (int t = 0; t < T; ++t) weighted += band_area[t] / ratio(t);
  const double c0 = weighted / budget;
  std::vector<int> cell_count(T);
  std::vector<double> tier_cell_area(T);
  for (int t = 0; t < T; ++t) {
    tier_cell_area[t] = c0 * ratio(t);
    cell_count[t] = std::max<long>(1, std::llround(band_area[t] / tier_cell_area[t]));
  }

  // Re-cut the bands so each holds exactly cell_count[t] cells of the scaled
  // tier target; the cross-tier mean-area law then holds exactly.
  double granted = 0.0;
  for (int t = 0; t < T; ++t) granted += cell_count[t] * tier_cell_area[t];
  const double scale = total_area / granted;
  double cum = 0.0;
  for (int t = 0; t < T; ++t) {
    cum += cell_count[t] * tier_cell_area[t] * scale;
    u[t + 1] = invert_cum_area(placement, area_side, cum);
  }
  u[T] = extent;

  for (int t = 0; t < T; ++t)
    if (u[t + 1] - u[t] < kMinBandWidth)
      throw std::invalid_argument("partition: tier_count infeasible, band width below 1 m (tier " +
                                  std::to_string(t) + ")");

  TierPlan plan;
  plan.area_side = area_side;
  plan.placement = placement;
  plan.sinks = sinks;
  plan.coverage_radius = knobs.coverage_radius;
  plan.tiers.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) plan.tiers.push_back({t, u[t], u[t + 1]});

  const bool ring = placement != SinkPlacementModel::OneSide;
  int next_id = 0;
  for (int t = 0; t < T; ++t) {
    const int n = cell_count[t];
    for (int k = 0; k < n; ++k) {
      Cluster cl;
      cl.id = next_id++;
      cl.tier_index = t;
      Cell& cell = cl.cell;
      cell.area_side = area_side;
      if (!ring) {
        cell.kind = Cell::Kind::Rect;
        cell.a0 = area_side * k / n;
        cell.a1 = k + 1 == n ? area_side : area_side * (k + 1) / n;
        cell.b0 = u[t];
        cell.b1 = u[t + 1];
        cl.center = {(cell.a0 + cell.a1) / 2.0, (cell.b0 + cell.b1) / 2.0};
      } else {
        cell.kind = Cell::Kind::RingSector;
        // Center tiers grow outward from the middle; Around tiers grow inward
        // from the boundary.
        if (placement == SinkPlacementModel::Center) {
          cell.a0 = u[t];
          cell.a1 = u[t + 1];
        } else {
          cell.a0 = extent - u[t + 1];
          cell.a1 = extent - u[t];
        }
        cell.b0 = static_cast<double>(k) / n;
        cell.b1 = k + 1 == n ? 1.0 : static_cast<double>(k + 1) / n;
        const double rho_mid = (cell.a0 + cell.a1) / 2.0;
        const double f_mid = (cell.b0 + cell.b1) / 2.0;
        const Point q = perimeter_point(rho_mid, f_mid);
        cl.center = {area_side / 2.0 + q.x, area_side / 2.0 + q.y};
      }
      cl.target_sink_index = target_sink(cl, sinks);
      plan.clusters.push_back(std::move(cl));
    }
  }
  return plan;
}

std::vector<int> assign_clusters(const Deployment& dep, const TierPlan& plan) {
  if (dep.area_side != plan.area_side)
    throw std::invalid_argument("assign_clusters: plan does not cover the deployment area");
  std::vector<int> membership(dep.nodes.size(), -1);
  for (std::size_t i = 0; i < dep.nodes.size(); ++i) {
    const Point p = dep.nodes[i];
    for (const Cluster& cl : plan.clusters) {
      if (cl.cell.contains(p)) {
        membership[i] = cl.id;
        break;
      }
    }
    if (membership[i] < 0)
      throw std::logic_error("assign_clusters: node " + std::to_string(i) +
                             " lies outside every cell (partition bug)");
  }
  return membership;
}

void populate_members(TierPlan& plan, const std::vector<int>& membership) {
  for (Cluster& cl : plan.clusters) cl.member_indices.clear();
  for (std::size_t i = 0; i < membership.size(); ++i)
    plan.clusters.at(static_cast<std::size_t>(membership[i]))
        .member_indices.push_back(static_cast<int>(i));
}

std::vector<int> neighbors(int node_index, const Deployment& dep, double coverage_radius) {
  if (!(coverage_radius > 0.0))
    throw std::invalid_argument("neighbors: coverage_radius must be positive");
  std::vector<int> out;
  const Point p = dep.nodes.at(static_cast<std::size_t>(node_index));
  for (std::size_t j = 0; j < dep.nodes.size(); ++j) {
    if (static_cast<int>(j) == node_index) continue;
    if (distance(p, dep.nodes[j]) <= coverage_radius) out.push_back(static_cast<int>(j));
  }
  return out;
}

int target_sink(const Cluster& cluster, const std::vector<Point>& sinks) {
  if (sinks.empty()) throw std::invalid_argument("target_sink: sinks must be nonempty");
  int best = 0;
  double best_d = distance(cluster.center, sinks[0]);
  for (std::size_t s = 1; s < sinks.size(); ++s) {
    const double d = distance(cluster.center, sinks[s]);
    if (d < best_d) {
      best = static_cast<int>(s);
      best_d = d;
    }
  }
  return best;
}

}  // namespace wsnsim
