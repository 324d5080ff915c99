#include "pavesched/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "pavesched/errors.hpp"

namespace pavesched {

Money cost_at_year(const CostScenarioMatrix& matrix, std::string_view id, Year year) {
  const auto row = matrix.per_segment.find(std::string(id));
  if (row == matrix.per_segment.end()) throw LookupError("cost matrix has no row for '" + std::string(id) + "'");
  const auto col = std::find(matrix.years.begin(), matrix.years.end(), year);
  if (col == matrix.years.end())
    throw MissingCostError("cost matrix has no year " + std::to_string(year) + " for '" + std::string(id) + "'");
  return row->second.at(static_cast<std::size_t>(col - matrix.years.begin()));
}

void check_matrix(const CostScenarioMatrix& matrix) {
  for (std::size_t i = 1; i < matrix.years.size(); ++i)
    if (matrix.years[i] <= matrix.years[i - 1]) throw InvalidArgument("cost matrix years must be strictly increasing");
  for (const auto& [id, row] : matrix.per_segment) {
    if (row.size() != matrix.years.size())
      throw InvalidArgument("cost matrix row '" + id + "' has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(matrix.years.size()));
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] <= Money())
        throw InvalidArgument("cost matrix row '" + id + "' has non-positive cost " + row[j].str() + " for year " +
                              std::to_string(matrix.years[j]));
  }
}

CostScenarioMatrix matrix_from_segments(std::span<const Segment> segments, std::span<const Year> years) {
  CostScenarioMatrix out;
  out.years.assign(years.begin(), years.end());
  for (const auto& s : segments) {
    std::vector<Money> row;
    row.reserve(years.size());
    for (Year y : years) row.push_back(s.cost_at(y));
    if (!out.per_segment.emplace(s.id, std::move(row)).second)
      throw InvalidArgument("duplicate segment id '" + s.id + "'");
  }
  return out;
}

void apply_cost_matrix(std::span<Segment> segments, const CostScenarioMatrix& matrix) {
  check_matrix(matrix);
  for (auto& s : segments) {
    const auto row = matrix.per_segment.find(s.id);
    if (row == matrix.per_segment.end()) throw LookupError("cost matrix has no row for '" + s.id + "'");
    s.cost_by_year.clear();
    for (std::size_t j = 0; j < matrix.years.size(); ++j) s.cost_by_year.emplace(matrix.years[j], row->second[j]);
  }
}

CostScenarioMatrix synthesize_cost_matrix(std::span<const BaseCost> base_costs, std::span<const Year> years,
                                          double growth_rate) {
  if (!(growth_rate > -1.0)) throw InvalidArgument("growth rate must be greater than -1");

  CostScenarioMatrix out;
  out.years.assign(years.begin(), years.end());
  for (const auto& base : base_costs) {
    const auto it = std::find(years.begin(), years.end(), base.scheduled_year);
    if (it == years.end())
      throw InvalidArgument("segment '" + base.id + "' scheduled in " + std::to_string(base.scheduled_year) +
                            ", outside the horizon");
    const auto j0 = static_cast<long>(it - years.begin());

    std::vector<Money> row;
    row.reserve(years.size());
    for (std::size_t j = 0; j < years.size(); ++j) {
      const double factor = std::pow(1.0 + growth_rate, static_cast<double>(static_cast<long>(j) - j0));
      const double cents = static_cast<double>(base.cost.cents()) * factor;
      const Money cost = Money::from_cents(static_cast<std::int64_t>(std::floor(cents + 0.5)));
      if (cost <= Money())
        throw InvalidArgument("synthesized cost for '" + base.id + "' in " + std::to_string(years[j]) +
                              " is not positive");
      row.push_back(cost);
    }
    out.per_segment.emplace(base.id, std::move(row));
  }
  return out;
}

ConservationReport conservation_from_rows(std::span<const YearBalance> rows, Money tolerance) {
  ConservationReport report;
  for (const auto& row : rows) {
    YearBalance b = row;
    b.deviation = b.realized_cost - b.budget;
    report.total_budget += b.budget;
    report.total_cost += b.realized_cost;
    report.per_year.push_back(b);
  }
  report.total_deviation = report.total_cost - report.total_budget;
  report.within_tolerance = abs(report.total_deviation) <= tolerance;
  return report;
}

ConservationReport conservation_report(const Plan& plan, const BudgetSchedule& schedule,
                                       std::span<const Segment> segments) {
  const SegmentIndex index(segments);
  std::vector<YearBalance> rows;
  for (const auto& entry : schedule.entries) rows.push_back({entry.year, entry.budget, Money(), Money()});

  for (const auto& cluster : plan.clusters) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const YearBalance& r) { return r.year == cluster.year; });
    if (it == rows.end()) {
      rows.push_back({cluster.year, Money(), Money(), Money()});
      it = rows.end() - 1;
    }
    it->realized_cost += cluster_cost(cluster, index, plan.cost_basis);
  }
  return conservation_from_rows(rows, schedule.conservation_tolerance);
}

}  // namespace pavesched
