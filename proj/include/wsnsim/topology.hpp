#pragma once

#include <cstdint>
#include <vector>

#include "wsnsim/geometry.hpp"

namespace wsnsim {

enum class SinkPlacementModel { OneSide, Center, Around };
enum class ClusterSizingModel { SmallerNearSink, LargerNearSink, Equal };

/// Fixed node field. The vector order is the canonical node index; positions
/// are pairwise distinct and reproduce bit-for-bit from the seed.
struct Deployment {
  double area_side = 0.0;
  std::vector<Point> nodes;
  std::uint64_t seed = 0;
};

/// Band of the field grouped by proximity to the sinks, index 0 nearest.
/// The [d_lo, d_hi) interval is expressed in the tier coordinate of the
/// partition geometry: y for side sinks, Chebyshev radius from the area
/// centre for a central sink, depth from the boundary for surrounding sinks.
struct Tier {
  int index = 0;
  double d_lo = 0.0;
  double d_hi = 0.0;
};

/// Cluster cell: an axis-aligned rectangle, or a sector of a concentric
/// square ring cut along the clockwise perimeter parametrisation.
struct Cell {
  enum class Kind { Rect, RingSector };
  Kind kind = Kind::Rect;
  double area_side = 0.0;
  // Rect: x in [a0,a1], y in [b0,b1].
  // RingSector: Chebyshev radius in [a0,a1], perimeter fraction in [b0,b1].
  double a0 = 0.0, a1 = 0.0, b0 = 0.0, b1 = 0.0;

  double area() const;
  /// Closed containment; overlaps on shared edges are resolved by the
  /// caller scanning cells in cluster-id order (lower id wins).
  bool contains(Point p) const;
};

struct Cluster {
  int id = 0;
  int tier_index = 0;
  Cell cell;
  Point center;
  int target_sink_index = 0;
  std::vector<int> member_indices;
};

struct TierPlan {
  double area_side = 0.0;
  SinkPlacementModel placement = SinkPlacementModel::OneSide;
  std::vector<Tier> tiers;
  std::vector<Cluster> clusters;
  std::vector<Point> sinks;
  double coverage_radius = 0.0;
};

struct PartitionKnobs {
  /// Cell-area progression between adjacent tiers under the unequal sizing
  /// models (and the seed for the band-width progression).
  double growth_ratio = 1.5;
  /// Whole-area cluster budget is tier_count * base_clusters_per_tier.
  int base_clusters_per_tier = 4;
  /// R_0.
  double coverage_radius = 100.0;
};

/// Uniform i.i.d. node positions over [0, area_side)^2 from a fixed-seed
/// mt19937_64 stream (53-bit mantissa draws, x then y per node). Exact
/// duplicate positions are re-drawn.
Deployment deploy_nodes(std::uint64_t seed, int node_count, double area_side);

/// OneSide: evenly spaced along the y = 0 edge. Center: the area centre
/// (requires sink_count == 1). Around: evenly spaced along the perimeter,
/// clockwise from the midpoint of the y = 0 edge.
std::vector<Point> place_sinks(SinkPlacementModel model, int sink_count, double area_side);

/// Bands the field into tiers and subdivides each band into equal-area cells.
/// Band widths start from a geometric progression with ratio growth_ratio
/// (increasing away from the sinks for SmallerNearSink, decreasing for
/// LargerNearSink, constant for Equal) and are then nudged so that every
/// tier's area is an integer multiple of its tier cell-area target; the mean
/// cell areas of adjacent tiers therefore follow the progression exactly.
TierPlan partition(double area_side, const std::vector<Point>& sinks,
                   SinkPlacementModel placement, int tier_count,
                   ClusterSizingModel sizing, const PartitionKnobs& knobs = {});

/// Node index -> cluster id. Boundary points resolve to the lowest matching
/// cluster id.
std::vector<int> assign_clusters(const Deployment& dep, const TierPlan& plan);

/// Fills Cluster::member_indices from an assign_clusters map.
void populate_members(TierPlan& plan, const std::vector<int>& membership);

/// All other nodes within coverage_radius (inclusive), sorted by index.
std::vector<int> neighbors(int node_index, const Deployment& dep, double coverage_radius);

/// Index of the sink nearest to the cluster centre; ties go to the lower
/// sink index. Fixed for the whole run.
int target_sink(const Cluster& cluster, const std::vector<Point>& sinks);

/// Clockwise square-perimeter parametrisation shared by ring cells and the
/// Around sink placement. Fraction 0 is the bottom-edge midpoint; the first
/// leg runs toward the bottom-left corner. Coordinates are relative to the
/// square centre.
Point perimeter_point(double half_side, double fraction);
double perimeter_fraction(double qx, double qy);

}  // namespace wsnsim
