#pragma once

// Year-dependent project costs: one row per segment holding what the
// project would cost if executed in each horizon year.

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pavesched/core_model.hpp"

namespace pavesched {

struct CostScenarioMatrix {
  std::vector<Year> years;
  std::map<std::string, std::vector<Money>> per_segment;  // row aligned with `years`

  friend bool operator==(const CostScenarioMatrix&, const CostScenarioMatrix&) = default;
};

/// Exact lookup. Throws LookupError for an unknown id, MissingCostError for
/// a year outside the matrix.
Money cost_at_year(const CostScenarioMatrix& matrix, std::string_view id, Year year);

/// Throws InvalidArgument when a row length differs from the year count,
/// a cost is not positive, or years are not strictly increasing.
void check_matrix(const CostScenarioMatrix& matrix);

/// Matrix built from the segments' own cost tables over `years`.
CostScenarioMatrix matrix_from_segments(std::span<const Segment> segments, std::span<const Year> years);

/// Replaces every segment's cost table with its matrix row. Throws
/// LookupError when a segment has no row.
void apply_cost_matrix(std::span<Segment> segments, const CostScenarioMatrix& matrix);

struct BaseCost {
  std::string id;
  Year scheduled_year = 0;
  Money cost;  // cost at the scheduled year
};

/// f_{Y_j}(x) = base(x) * (1 + growth_rate)^(j - j0), rounded half-up to
/// cents, where j0 is the index of x's scheduled year in `years`.
/// Throws InvalidArgument when growth_rate <= -1, a scheduled year is not in
/// `years`, or a generated cost is not positive.
CostScenarioMatrix synthesize_cost_matrix(std::span<const BaseCost> base_costs, std::span<const Year> years,
                                          double growth_rate);

// ---- conservation ----------------------------------------------------------

struct YearBalance {
  Year year = 0;
  Money budget;
  Money realized_cost;
  Money deviation;  // realized_cost - budget

  friend bool operator==(const YearBalance&, const YearBalance&) = default;
};

struct ConservationReport {
  std::vector<YearBalance> per_year;
  Money total_budget;
  Money total_cost;
  Money total_deviation;  // total_cost - total_budget
  bool within_tolerance = true;

  friend bool operator==(const ConservationReport&, const ConservationReport&) = default;
};

/// Balances built directly from (year, budget, realized) rows.
ConservationReport conservation_from_rows(std::span<const YearBalance> rows, Money tolerance);

/// Per-year budget vs realized cost of a plan, plus totals. A plan cluster
/// whose year is not in the schedule is reported against a zero budget.
ConservationReport conservation_report(const Plan& plan, const BudgetSchedule& schedule,
                                       std::span<const Segment> segments);

}  // namespace pavesched
