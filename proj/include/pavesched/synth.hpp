#pragma once

// Synthetic datasets: Gaussian blobs of projects on a square map, each given
// a random cost and a scheduled year drawn independently of location (so the
// initial schedule is spatially scattered).

#include <cstdint>
#include <optional>
#include <vector>

#include "pavesched/core_model.hpp"
#include "pavesched/cost_model.hpp"

namespace pavesched {

struct SynthParams {
  std::size_t n = 800;
  std::size_t blobs = 5;
  double spread = 300.0;    // blob standard deviation, map units
  double extent = 10000.0;  // blob centers drawn in [0, extent]^2
  std::vector<Year> years{2018, 2019, 2020, 2021, 2022};
  /// One budget per year. Empty: each year's budget is the total cost of
  /// the segments scheduled in it, so total cost equals total budget.
  std::vector<Money> budgets;
  /// Per-year e_l = e_h = round(fraction * budget).
  double tolerance_fraction = 0.0;
  double growth_rate = 0.0;
  Money min_cost = Money::from_cents(500'000);     // 5,000.00
  Money max_cost = Money::from_cents(15'000'000);  // 150,000.00
  std::uint64_t seed = 1;
};

struct SynthDataset {
  std::vector<Segment> segments;  // cost tables cover every year
  BudgetSchedule schedule;
  CostScenarioMatrix matrix;
};

/// Throws InvalidArgument when n < blobs, blobs == 0, years is empty or
/// unsorted, the budget count differs from the year count, or auto-sized
/// budgets would leave a year without segments (n < number of years).
SynthDataset synthesize_dataset(const SynthParams& params);

}  // namespace pavesched
