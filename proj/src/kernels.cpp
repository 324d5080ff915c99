#include "pavesched/kernels.hpp"

#include <limits>

namespace pavesched::kernels {

namespace {

// Below this many distance evaluations the thread team costs more than it saves.
constexpr std::ptrdiff_t kParallelThreshold = 2048;

double min_distance(const Coords& x, PointRefs set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Coords* s : set) {
    const double d = distance(*s, x);
    if (d < best) best = d;
  }
  return best;
}

bool better(const Furthest& a, const Furthest& b) {
  return a.distance > b.distance || (a.distance == b.distance && a.index < b.index);
}

}  // namespace

std::vector<double> distances_from(const Coords& anchor, PointRefs points) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::vector<double> out(points.size());
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = distance(anchor, *points[i]);
  return out;
}

std::vector<double> min_distances_to_set(PointRefs points, PointRefs set) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  const auto work = n * static_cast<std::ptrdiff_t>(set.size());
  std::vector<double> out(points.size());
#pragma omp parallel for schedule(static) if (work > kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = min_distance(*points[i], set);
  return out;
}

Furthest furthest_from_set(PointRefs points, PointRefs set) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  const auto work = n * static_cast<std::ptrdiff_t>(set.size());
  Furthest best{0, n > 0 ? min_distance(*points[0], set) : 0.0};

#pragma omp parallel if (work > kParallelThreshold)
  {
    Furthest local = best;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 1; i < n; ++i) {
      const Furthest candidate{static_cast<std::size_t>(i), min_distance(*points[i], set)};
      if (better(candidate, local)) local = candidate;
    }
#pragma omp critical(pavesched_furthest)
    if (better(local, best)) best = local;
  }
  return best;
}

std::vector<double> upper_row_sums(PointRefs points) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::vector<double> out(points.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16) if (n * n / 2 > kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::ptrdiff_t j = i + 1; j < n; ++j) sum += distance(*points[i], *points[j]);
    out[i] = sum;
  }
  return out;
}

std::vector<double> full_row_sums(PointRefs points) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::vector<double> out(points.size(), 0.0);
#pragma omp parallel for schedule(static) if (n * n > kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::ptrdiff_t j = 0; j < n; ++j)
      if (j != i) sum += distance(*points[i], *points[j]);
    out[i] = sum;
  }
  return out;
}

namespace serial {

std::vector<double> distances_from(const Coords& anchor, PointRefs points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Coords* p : points) out.push_back(distance(anchor, *p));
  return out;
}

std::vector<double> min_distances_to_set(PointRefs points, PointRefs set) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Coords* p : points) out.push_back(min_distance(*p, set));
  return out;
}

Furthest furthest_from_set(PointRefs points, PointRefs set) {
  Furthest best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = min_distance(*points[i], set);
    if (i == 0 || d > best.distance) best = {i, d};
  }
  return best;
}

std::vector<double> upper_row_sums(PointRefs points) {
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) out[i] += distance(*points[i], *points[j]);
  return out;
}

std::vector<double> full_row_sums(PointRefs points) {
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) out[i] += distance(*points[i], *points[j]);
  return out;
}

}  // namespace serial

}  // namespace pavesched::kernels
