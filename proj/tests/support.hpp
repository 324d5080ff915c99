#pragma once

// Builders for hand-made and randomized test datasets.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pavesched/core_model.hpp"

namespace testing {

using namespace pavesched;

inline Money cents(std::int64_t c) { return Money::from_cents(c); }
inline Money units(std::int64_t u) { return Money::from_cents(u * 100); }

/// Segment with the same cost in every listed year (or just the scheduled year).
inline Segment seg(std::string id, Coords coords, Money cost, Year year = 2018, std::vector<Year> years = {}) {
  Segment s;
  s.id = std::move(id);
  s.coords = std::move(coords);
  s.scheduled_year = year;
  s.cost_by_year[year] = cost;
  for (Year y : years) s.cost_by_year[y] = cost;
  return s;
}

/// Unit-cost points on the x axis at the given positions, ids "p<x>".
inline std::vector<Segment> line(std::vector<double> xs, Year year = 2018) {
  std::vector<Segment> out;
  for (double x : xs) out.push_back(seg("p" + std::to_string(static_cast<int>(x)), {x, 0.0}, units(1), year));
  return out;
}

inline BudgetSchedule budgets(std::vector<Money> amounts, Year first = 2018) {
  BudgetSchedule b;
  for (std::size_t i = 0; i < amounts.size(); ++i)
    b.entries.push_back({first + static_cast<Year>(i), amounts[i], Money(), Money()});
  return b;
}

inline std::set<std::string> ids(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

struct RandomSpec {
  std::size_t n = 50;
  std::size_t dims = 2;
  std::vector<Year> years{2018, 2019, 2020};
  /// Coordinates are multiples of `grid` in [0, extent); a coarse grid makes
  /// distance ties common.
  double extent = 100.0;
  double grid = 1.0;
  std::int64_t min_cents = 100;
  std::int64_t max_cents = 10'000;
  /// Costs are multiples of this many cents; a coarse step makes exact
  /// budget fits common.
  std::int64_t cost_step = 1;
  /// Per-year cost drift; 0 gives flat cost tables.
  bool flat = true;
};

/// Random segments with ids "r<i>" and full cost tables over spec.years.
inline std::vector<Segment> random_segments(std::mt19937_64& gen, const RandomSpec& spec) {
  std::uniform_int_distribution<long> cell(0, static_cast<long>(spec.extent / spec.grid) - 1);
  std::uniform_int_distribution<std::int64_t> steps(spec.min_cents / spec.cost_step, spec.max_cents / spec.cost_step);
  auto cost = [&](std::mt19937_64& g) { return steps(g) * spec.cost_step; };
  std::uniform_int_distribution<std::size_t> year(0, spec.years.size() - 1);
  std::vector<Segment> out;
  for (std::size_t i = 0; i < spec.n; ++i) {
    Segment s;
    s.id = "r" + std::to_string(i);
    for (std::size_t d = 0; d < spec.dims; ++d) s.coords.push_back(static_cast<double>(cell(gen)) * spec.grid);
    s.scheduled_year = spec.years[year(gen)];
    const auto base = cost(gen);
    for (Year y : spec.years) s.cost_by_year[y] = Money::from_cents(spec.flat ? base : cost(gen));
    out.push_back(std::move(s));
  }
  return out;
}

/// Budgets over spec.years drawn so that a typical year holds a few to a few
/// dozen segments.
inline BudgetSchedule random_budgets(std::mt19937_64& gen, const RandomSpec& spec, double tolerance_fraction = 0.0) {
  const std::int64_t mean_cost = (spec.min_cents + spec.max_cents) / 2;
  const auto per_year = static_cast<std::int64_t>(spec.n / spec.years.size()) + 1;
  std::uniform_int_distribution<std::int64_t> amount(mean_cost / 2, mean_cost * per_year * 3 / 2);
  BudgetSchedule b;
  for (Year y : spec.years) {
    const Money p = Money::from_cents(amount(gen));
    const auto tol = Money::from_cents(static_cast<std::int64_t>(static_cast<double>(p.cents()) * tolerance_fraction));
    b.entries.push_back({y, p, std::min(tol, p - Money::from_cents(1)), tol});
  }
  return b;
}

}  // namespace testing
