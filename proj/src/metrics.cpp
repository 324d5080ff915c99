#include "pavesched/metrics.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "pavesched/errors.hpp"
#include "pavesched/kernels.hpp"

namespace pavesched {

namespace {

struct Dispersion {
  double to_center = 0.0;
  double pairwise = 0.0;
};

Dispersion dispersion_of(const Cluster& cluster, const SegmentIndex& index) {
  const std::size_t m = cluster.member_ids.size();
  if (m < 2) return {};

  std::vector<const Coords*> points;
  points.reserve(m);
  for (const auto& id : cluster.member_ids) points.push_back(&index.at(id).coords);

  double pair_sum = 0.0;
  for (double row : kernels::upper_row_sums(points)) pair_sum += row;

  const Coords* center = nullptr;
  if (cluster.center_id) {
    center = &index.at(*cluster.center_id).coords;
  } else {
    const auto sums = kernels::full_row_sums(points);
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (sums[i] < sums[best] || (sums[i] == sums[best] && cluster.member_ids[i] < cluster.member_ids[best]))
        best = i;
    center = points[best];
  }
  double center_sum = 0.0;
  for (double d : kernels::distances_from(*center, points)) center_sum += d;

  const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  return {center_sum / static_cast<double>(m), pair_sum / pairs};
}

std::unordered_map<std::string, Year> assignment_of(const Plan& plan) {
  std::unordered_map<std::string, Year> out;
  for (const auto& c : plan.clusters)
    for (const auto& id : c.member_ids) out.emplace(id, c.year);
  return out;
}

}  // namespace

PlanMetrics compute_metrics(const Plan& plan, const BudgetSchedule& schedule, std::span<const Segment> segments) {
  const SegmentIndex index(segments);
  PlanMetrics out;
  out.unassigned_count = plan.unassigned_ids.size();
  for (const auto& id : plan.unassigned_ids) (void)index.at(id);

  double weight = 0.0;
  double pair_acc = 0.0;
  double center_acc = 0.0;
  for (const auto& cluster : plan.clusters) {
    YearMetrics ym;
    ym.year = cluster.year;
    const BudgetEntry* entry = schedule.find(cluster.year);
    ym.budget = entry ? entry->budget : cluster.budget;
    ym.realized_cost = cluster_cost(cluster, index, plan.cost_basis);
    ym.utilization = ym.budget > Money()
                         ? static_cast<double>(ym.realized_cost.cents()) / static_cast<double>(ym.budget.cents())
                         : 0.0;
    ym.over_budget = ym.realized_cost > ym.budget;
    ym.member_count = cluster.member_ids.size();
    const auto d = dispersion_of(cluster, index);
    ym.mean_member_distance_to_center = d.to_center;
    ym.mean_pairwise_distance = d.pairwise;

    const auto m = static_cast<double>(ym.member_count);
    weight += m;
    pair_acc += m * d.pairwise;
    center_acc += m * d.to_center;

    out.overall.total_cost += ym.realized_cost;
    out.per_year.push_back(ym);
  }
  out.overall.total_budget = schedule.total_budget();
  out.overall.total_deviation = out.overall.total_cost - out.overall.total_budget;
  if (weight > 0.0) {
    out.overall.weighted_mean_dispersion = pair_acc / weight;
    out.overall.weighted_mean_center_distance = center_acc / weight;
  }
  return out;
}

Plan initial_schedule_plan(std::span<const Segment> segments, const BudgetSchedule& schedule) {
  Plan plan;
  plan.cost_basis = CostBasis::scheduled_year;
  for (const auto& entry : schedule.entries) plan.clusters.push_back({entry.year, std::nullopt, {}, Money(), entry.budget});
  for (const auto& s : segments) {
    auto it = std::find_if(plan.clusters.begin(), plan.clusters.end(),
                           [&](const Cluster& c) { return c.year == s.scheduled_year; });
    if (it == plan.clusters.end()) {
      plan.unassigned_ids.push_back(s.id);
      continue;
    }
    it->member_ids.push_back(s.id);
    it->realized_cost += s.scheduled_cost();
  }
  return plan;
}

PlanComparison compare_plans(const Plan& before, const Plan& after, const BudgetSchedule& schedule,
                             std::span<const Segment> segments) {
  for (const Plan* p : {&before, &after}) {
    const auto problems = partition_violations(*p, segments);
    if (!problems.empty())
      throw InvalidArgument(std::string(p == &before ? "before" : "after") +
                            " plan does not cover the segment universe: " + problems.front());
  }

  const auto mb = compute_metrics(before, schedule, segments);
  const auto ma = compute_metrics(after, schedule, segments);

  PlanComparison out;
  std::set<Year> years;
  for (const auto& y : mb.per_year) years.insert(y.year);
  for (const auto& y : ma.per_year) years.insert(y.year);
  for (Year year : years) {
    YearDelta d;
    d.year = year;
    for (const auto& y : mb.per_year)
      if (y.year == year) {
        d.center_distance_before = y.mean_member_distance_to_center;
        d.pairwise_before = y.mean_pairwise_distance;
      }
    for (const auto& y : ma.per_year)
      if (y.year == year) {
        d.center_distance_after = y.mean_member_distance_to_center;
        d.pairwise_after = y.mean_pairwise_distance;
      }
    d.pairwise_delta = d.pairwise_after - d.pairwise_before;
    out.per_year.push_back(d);
  }
  out.dispersion_before = mb.overall.weighted_mean_dispersion;
  out.dispersion_after = ma.overall.weighted_mean_dispersion;
  out.dispersion_delta = out.dispersion_after - out.dispersion_before;
  out.center_distance_delta = ma.overall.weighted_mean_center_distance - mb.overall.weighted_mean_center_distance;

  const auto year_before = assignment_of(before);
  const auto year_after = assignment_of(after);
  for (const auto& s : segments) {
    const auto a = year_before.find(s.id);
    const auto b = year_after.find(s.id);
    const bool in_a = a != year_before.end();
    const bool in_b = b != year_after.end();
    if (in_a && !in_b) ++out.newly_unassigned;
    if (!in_a && in_b) ++out.newly_assigned;
    if (in_a && in_b && a->second != b->second) {
      ++out.moved;
      ++out.year_shift_histogram[b->second - a->second];
    }
  }
  return out;
}

}  // namespace pavesched
