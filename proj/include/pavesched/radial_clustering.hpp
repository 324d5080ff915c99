#pragma once

// Radial (nearest-first) cluster growth under a cost cap, and the two plan
// drivers built on it: random centers and landmark (furthest-point) centers.

#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "pavesched/core_model.hpp"
#include "pavesched/geometry.hpp"

namespace pavesched {

/// prefix: stop at the first neighbor that does not fit (default).
/// skip:   pass over a neighbor that does not fit and keep trying farther ones.
enum class AdmissionMode { prefix, skip };

struct RadialOptions {
  AdmissionMode mode = AdmissionMode::prefix;
  CostBasis basis = CostBasis::scheduled_year;
  /// Year the cluster is built for. Required with CostBasis::cluster_year;
  /// otherwise defaults to the center's scheduled year.
  std::optional<Year> year;
};

struct ClusterResult {
  Cluster cluster;
  ClusterBuildTrace trace;
};

/// Cost charged for `segment` under `options`.
Money admission_cost(const Segment& segment, const RadialOptions& options);

/// Grows a cluster from `center` over neighbors already ranked nearest-first
/// (the center must not appear in `ranked`). Starts with the center's cost;
/// if that alone is >= cap the center is returned alone, flagged
/// center_exceeds_budget.
ClusterResult grow_radially(const Segment& center, std::span<const RankedSegment> ranked, Money cap,
                            const RadialOptions& options);

/// Throws InvalidArgument when the center is not in the pool or p <= 0.
ClusterResult radial_neighbor_clustering(std::span<const Segment* const> pool, const Segment& center, Money p,
                                         const RadialOptions& options = {});
ClusterResult radial_neighbor_clustering(std::span<const Segment> pool, const Segment& center, Money p,
                                         const RadialOptions& options = {});

/// Reproducible generator for center draws and synthetic data: a
/// std::mt19937_64 stream with rejection-sampled index draws and a
/// Box-Muller normal, so results do not depend on the standard library's
/// distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01();
  double normal(double mean = 0.0, double stddev = 1.0);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// Each schedule entry in turn: a uniformly random center from the remaining
/// pool, a radial cluster against that entry's budget, then removal of the
/// cluster from the pool. Leftovers become unassigned_ids.
Plan main_algorithm(std::span<const Segment> segments, const BudgetSchedule& schedule, std::uint64_t seed,
                    AdmissionMode mode = AdmissionMode::prefix);

/// Segment with the largest coordinate on `axis`, ties by ascending id.
const Segment& select_initial_center(std::span<const Segment> segments, std::size_t axis);

/// Deterministic variant: first center maximizes coordinate `axis`; each
/// following center is the remaining point farthest from everything already
/// clustered.
Plan landmark_based_radial_clustering(std::span<const Segment> segments, const BudgetSchedule& schedule,
                                      std::size_t axis = 0, AdmissionMode mode = AdmissionMode::prefix);

}  // namespace pavesched
