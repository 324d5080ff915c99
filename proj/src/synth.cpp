#include "pavesched/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pavesched/errors.hpp"
#include "pavesched/radial_clustering.hpp"

namespace pavesched {

namespace {

double round_cm(double v) { return std::round(v * 100.0) / 100.0; }

std::string segment_id(std::size_t i, std::size_t n) {
  const std::size_t width = std::to_string(n).size();
  std::string digits = std::to_string(i + 1);
  return "S" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

SynthDataset synthesize_dataset(const SynthParams& p) {
  if (p.blobs == 0) throw InvalidArgument("need at least one blob");
  if (p.n < p.blobs) throw InvalidArgument("need at least as many segments as blobs");
  if (p.years.empty()) throw InvalidArgument("need at least one year");
  if (!std::is_sorted(p.years.begin(), p.years.end()) ||
      std::adjacent_find(p.years.begin(), p.years.end()) != p.years.end())
    throw InvalidArgument("years must be strictly increasing");
  if (!p.budgets.empty() && p.budgets.size() != p.years.size())
    throw InvalidArgument("budget count must match year count");
  if (p.budgets.empty() && p.n < p.years.size())
    throw InvalidArgument("auto-sized budgets need at least one segment per year");
  if (!(p.spread >= 0.0) || !(p.extent > 0.0)) throw InvalidArgument("spread must be >= 0 and extent > 0");
  if (p.min_cost <= Money() || p.max_cost < p.min_cost) throw InvalidArgument("invalid cost range");
  if (p.tolerance_fraction < 0.0 || p.tolerance_fraction >= 1.0)
    throw InvalidArgument("tolerance fraction must be in [0, 1)");

  SeededRng rng(p.seed);

  std::vector<std::pair<double, double>> centers;
  for (std::size_t b = 0; b < p.blobs; ++b) centers.emplace_back(rng.uniform01() * p.extent, rng.uniform01() * p.extent);

  // Round-robin years over a shuffled order: every year gets a share and
  // location says nothing about the year.
  std::vector<std::size_t> order(p.n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = p.n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  std::vector<Year> year_of(p.n);
  for (std::size_t k = 0; k < p.n; ++k) year_of[order[k]] = p.years[k % p.years.size()];

  const auto cost_span = static_cast<std::uint64_t>((p.max_cost - p.min_cost).cents()) + 1;
  std::vector<BaseCost> base;
  SynthDataset out;
  for (std::size_t i = 0; i < p.n; ++i) {
    const auto& [cx, cy] = centers[i % p.blobs];
    Segment s;
    s.id = segment_id(i, p.n);
    s.coords = {round_cm(rng.normal(cx, p.spread)), round_cm(rng.normal(cy, p.spread))};
    s.scheduled_year = year_of[i];
    const Money cost = p.min_cost + Money::from_cents(static_cast<std::int64_t>(rng.uniform_index(cost_span)));
    base.push_back({s.id, s.scheduled_year, cost});
    out.segments.push_back(std::move(s));
  }

  out.matrix = synthesize_cost_matrix(base, p.years, p.growth_rate);
  apply_cost_matrix(out.segments, out.matrix);

  for (std::size_t j = 0; j < p.years.size(); ++j) {
    BudgetEntry e;
    e.year = p.years[j];
    if (p.budgets.empty()) {
      for (const auto& s : out.segments)
        if (s.scheduled_year == e.year) e.budget += s.scheduled_cost();
    } else {
      e.budget = p.budgets[j];
    }
    const auto tol = Money::from_cents(
        static_cast<std::int64_t>(std::floor(static_cast<double>(e.budget.cents()) * p.tolerance_fraction + 0.5)));
    e.low_tolerance = std::min(tol, e.budget - Money::from_cents(1));
    e.high_tolerance = tol;
    out.schedule.entries.push_back(e);
  }
  return out;
}

}  // namespace pavesched
