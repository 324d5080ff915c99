#pragma once

#include <span>
#include <string>
#include <vector>

#include "pavesched/core_model.hpp"

namespace pavesched {

/// A non-owning view of a working pool of segments, in pool order.
using SegmentRefs = std::vector<const Segment*>;

SegmentRefs refs_of(std::span<const Segment> segments);

/// Euclidean distance. Throws InvalidArgument on dimension mismatch.
double distance(std::span<const double> a, std::span<const double> b);

/// Single-linkage distance min over s in S of d(s, x); 0 when x is in S.
/// Throws InvalidArgument when S is empty.
double point_set_distance(std::span<const Coords> set, const Coords& x);

/// Segments sorted ascending by distance to an anchor, ties by ascending id.
struct DistanceOrdering {
  std::string anchor_id;
  std::vector<std::string> ordered_ids;
  std::vector<double> distances;  // aligned with ordered_ids
};

struct RankedSegment {
  const Segment* segment;
  double distance;
};

/// Every pool member except the anchor (matched by id), nearest first.
std::vector<RankedSegment> rank_by_distance(std::span<const Segment* const> pool, const Segment& anchor);

/// Throws InvalidArgument when the anchor is not among `segments`.
DistanceOrdering order_by_distance(std::span<const Segment> segments, const Segment& anchor);

/// Position in `candidates` of the point farthest (single linkage) from
/// `cluster`. Ties go to the earliest candidate. Argument roles matter:
/// swapping them answers a different question.
std::size_t furthest_point_index(std::span<const Segment* const> candidates,
                                 std::span<const Segment* const> cluster);

/// Throws InvalidArgument when X or S is empty.
const Segment& furthest_point_from_cluster(std::span<const Segment> candidates, std::span<const Coords> cluster);

}  // namespace pavesched
