#include "pavesched/geometry.hpp"

#include <algorithm>

#include "pavesched/errors.hpp"
#include "pavesched/kernels.hpp"

namespace pavesched {

namespace {

std::vector<const Coords*> coords_of(std::span<const Segment* const> segments) {
  std::vector<const Coords*> out;
  out.reserve(segments.size());
  for (const Segment* s : segments) out.push_back(&s->coords);
  return out;
}

void check_dimensions(std::span<const Segment* const> segments, std::size_t dim) {
  for (const Segment* s : segments)
    if (s->coords.size() != dim)
      throw InvalidArgument("segment '" + s->id + "' has " + std::to_string(s->coords.size()) +
                            " coordinates, expected " + std::to_string(dim));
}

}  // namespace

SegmentRefs refs_of(std::span<const Segment> segments) {
  SegmentRefs out;
  out.reserve(segments.size());
  for (const auto& s : segments) out.push_back(&s);
  return out;
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  return kernels::distance(a, b);
}

double point_set_distance(std::span<const Coords> set, const Coords& x) {
  if (set.empty()) throw InvalidArgument("point-to-set distance of an empty set");
  double best = distance(set.front(), x);
  for (const auto& s : set.subspan(1)) best = std::min(best, distance(s, x));
  return best;
}

std::vector<RankedSegment> rank_by_distance(std::span<const Segment* const> pool, const Segment& anchor) {
  check_dimensions(pool, anchor.coords.size());

  SegmentRefs others;
  others.reserve(pool.size());
  bool found = false;
  for (const Segment* s : pool) {
    if (s->id == anchor.id)
      found = true;
    else
      others.push_back(s);
  }
  if (!found) throw InvalidArgument("anchor '" + anchor.id + "' is not in the pool");

  const auto points = coords_of(others);
  const auto dist = kernels::distances_from(anchor.coords, points);

  std::vector<RankedSegment> ranked;
  ranked.reserve(others.size());
  for (std::size_t i = 0; i < others.size(); ++i) ranked.push_back({others[i], dist[i]});
  std::sort(ranked.begin(), ranked.end(), [](const RankedSegment& a, const RankedSegment& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.segment->id < b.segment->id;
  });
  return ranked;
}

DistanceOrdering order_by_distance(std::span<const Segment> segments, const Segment& anchor) {
  const auto refs = refs_of(segments);
  DistanceOrdering out;
  out.anchor_id = anchor.id;
  for (const auto& r : rank_by_distance(refs, anchor)) {
    out.ordered_ids.push_back(r.segment->id);
    out.distances.push_back(r.distance);
  }
  return out;
}

std::size_t furthest_point_index(std::span<const Segment* const> candidates,
                                 std::span<const Segment* const> cluster) {
  if (candidates.empty()) throw InvalidArgument("furthest point: empty candidate set");
  if (cluster.empty()) throw InvalidArgument("furthest point: empty cluster");
  const std::size_t dim = candidates.front()->coords.size();
  check_dimensions(candidates, dim);
  check_dimensions(cluster, dim);

  const auto xs = coords_of(candidates);
  const auto ss = coords_of(cluster);
  return kernels::furthest_from_set(xs, ss).index;
}

const Segment& furthest_point_from_cluster(std::span<const Segment> candidates, std::span<const Coords> cluster) {
  if (candidates.empty()) throw InvalidArgument("furthest point: empty candidate set");
  if (cluster.empty()) throw InvalidArgument("furthest point: empty cluster");
  const std::size_t dim = candidates.front().coords.size();
  std::vector<const Coords*> xs;
  for (const auto& c : candidates) {
    if (c.coords.size() != dim) throw InvalidArgument("furthest point: dimension mismatch at '" + c.id + "'");
    xs.push_back(&c.coords);
  }
  std::vector<const Coords*> ss;
  for (const auto& s : cluster) {
    if (s.size() != dim) throw InvalidArgument("furthest point: dimension mismatch in cluster");
    ss.push_back(&s);
  }
  return candidates[kernels::furthest_from_set(xs, ss).index];
}

}  // namespace pavesched
