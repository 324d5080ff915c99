#pragma once

// Plan quality figures: budget utilization per year and spatial dispersion
// (how geographically grouped each year's projects are), plus before/after
// comparison of two plans over the same segments.

#include <map>
#include <span>
#include <vector>

#include "pavesched/core_model.hpp"

namespace pavesched {

struct YearMetrics {
  Year year = 0;
  Money budget;
  Money realized_cost;
  double utilization = 0.0;  // realized / budget; > 1 only for over-budget clusters
  bool over_budget = false;
  std::size_t member_count = 0;
  /// Mean over all members (center included) of the distance to the center.
  /// Clusters without a center use their medoid.
  double mean_member_distance_to_center = 0.0;
  /// Mean over unordered member pairs.
  double mean_pairwise_distance = 0.0;

  friend bool operator==(const YearMetrics&, const YearMetrics&) = default;
};

struct OverallMetrics {
  Money total_budget;
  Money total_cost;
  Money total_deviation;  // total_cost - total_budget
  /// Member-count weighted mean of the per-year mean pairwise distance.
  double weighted_mean_dispersion = 0.0;
  /// Member-count weighted mean of the per-year mean distance to center.
  double weighted_mean_center_distance = 0.0;

  friend bool operator==(const OverallMetrics&, const OverallMetrics&) = default;
};

struct PlanMetrics {
  std::vector<YearMetrics> per_year;  // aligned with plan.clusters
  OverallMetrics overall;
  std::size_t unassigned_count = 0;

  friend bool operator==(const PlanMetrics&, const PlanMetrics&) = default;
};

/// Throws LookupError when the plan names an id not among `segments`.
PlanMetrics compute_metrics(const Plan& plan, const BudgetSchedule& schedule, std::span<const Segment> segments);

/// The plan implied by the segments' own scheduled years: one center-less
/// cluster per schedule entry. Segments scheduled outside the horizon are
/// left unassigned.
Plan initial_schedule_plan(std::span<const Segment> segments, const BudgetSchedule& schedule);

struct YearDelta {
  Year year = 0;
  double center_distance_before = 0.0;
  double center_distance_after = 0.0;
  double pairwise_before = 0.0;
  double pairwise_after = 0.0;
  double pairwise_delta = 0.0;  // after - before; negative means tighter

  friend bool operator==(const YearDelta&, const YearDelta&) = default;
};

struct PlanComparison {
  std::vector<YearDelta> per_year;  // ascending year
  double dispersion_before = 0.0;
  double dispersion_after = 0.0;
  double dispersion_delta = 0.0;       // after - before; negative means tighter
  double center_distance_delta = 0.0;  // after - before
  std::size_t moved = 0;               // assigned in both plans, different year
  std::size_t newly_unassigned = 0;
  std::size_t newly_assigned = 0;
  std::map<int, std::size_t> year_shift_histogram;  // (after - before) years -> count

  friend bool operator==(const PlanComparison&, const PlanComparison&) = default;
};

/// Throws InvalidArgument when either plan is not a partition of `segments`.
PlanComparison compare_plans(const Plan& before, const Plan& after, const BudgetSchedule& schedule,
                             std::span<const Segment> segments);

}  // namespace pavesched
