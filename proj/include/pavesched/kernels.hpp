#pragma once

// Data-parallel distance kernels. The top-level functions are OpenMP
// parallel; `kernels::serial` holds straightforward single-threaded
// references with identical results (bit for bit) that the tests and the
// benchmark compare against.
//
// Every kernel is deterministic regardless of thread count: per-element
// results are computed in a fixed order and reductions either use exact
// operations (min/max with index tie-breaks) or are finished serially.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pavesched/core_model.hpp"

namespace pavesched::kernels {

using PointRefs = std::span<const Coords* const>;

/// Euclidean distance; callers guarantee equal dimensions.
inline double distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

struct Furthest {
  std::size_t index = 0;
  double distance = 0.0;
};

std::vector<double> distances_from(const Coords& anchor, PointRefs points);

/// out[i] = min over s in `set` of distance(points[i], s).
std::vector<double> min_distances_to_set(PointRefs points, PointRefs set);

/// Earliest index of `points` maximizing the distance to `set`.
Furthest furthest_from_set(PointRefs points, PointRefs set);

/// out[i] = sum over j > i of distance(points[i], points[j]), j ascending.
std::vector<double> upper_row_sums(PointRefs points);

/// out[i] = sum over j != i of distance(points[i], points[j]), j ascending.
std::vector<double> full_row_sums(PointRefs points);

namespace serial {
std::vector<double> distances_from(const Coords& anchor, PointRefs points);
std::vector<double> min_distances_to_set(PointRefs points, PointRefs set);
Furthest furthest_from_set(PointRefs points, PointRefs set);
std::vector<double> upper_row_sums(PointRefs points);
std::vector<double> full_row_sums(PointRefs points);
}  // namespace serial

}  // namespace pavesched::kernels
