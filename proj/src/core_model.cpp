#include "pavesched/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "pavesched/errors.hpp"

namespace pavesched {

Money Segment::cost_at(Year year) const {
  const auto it = cost_by_year.find(year);
  if (it == cost_by_year.end())
    throw MissingCostError("segment '" + id + "' has no cost for year " + std::to_string(year));
  return it->second;
}

std::vector<Year> BudgetSchedule::years() const {
  std::vector<Year> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.year);
  return out;
}

Money BudgetSchedule::total_budget() const {
  Money total;
  for (const auto& e : entries) total += e.budget;
  return total;
}

const BudgetEntry* BudgetSchedule::find(Year year) const {
  for (const auto& e : entries)
    if (e.year == year) return &e;
  return nullptr;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::budget_reached: return "budget_reached";
    case StopReason::data_exhausted: return "data_exhausted";
    case StopReason::center_exceeds_budget: return "center_exceeds_budget";
  }
  return "?";
}

StopReason parse_stop_reason(std::string_view text) {
  for (auto r : {StopReason::budget_reached, StopReason::data_exhausted, StopReason::center_exceeds_budget})
    if (to_string(r) == text) return r;
  throw ParseError("unknown stop reason '" + std::string(text) + "'");
}

std::string_view to_string(CostBasis basis) {
  return basis == CostBasis::scheduled_year ? "scheduled_year" : "cluster_year";
}

CostBasis parse_cost_basis(std::string_view text) {
  if (text == "scheduled_year") return CostBasis::scheduled_year;
  if (text == "cluster_year") return CostBasis::cluster_year;
  throw ParseError("unknown cost basis '" + std::string(text) + "'");
}

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::over_budget_singleton: return "over_budget_singleton";
    case DiagnosticKind::unassigned_remainder: return "unassigned_remainder";
    case DiagnosticKind::pool_exhausted: return "pool_exhausted";
    case DiagnosticKind::conservation_mismatch: return "conservation_mismatch";
  }
  return "?";
}

DiagnosticKind parse_diagnostic_kind(std::string_view text) {
  for (auto k : {DiagnosticKind::over_budget_singleton, DiagnosticKind::unassigned_remainder,
                 DiagnosticKind::pool_exhausted, DiagnosticKind::conservation_mismatch})
    if (to_string(k) == text) return k;
  throw ParseError("unknown diagnostic kind '" + std::string(text) + "'");
}

SegmentIndex::SegmentIndex(std::span<const Segment> segments) : segments_(segments) {
  by_id_.reserve(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!by_id_.emplace(segments[i].id, i).second)
      throw InvalidArgument("duplicate segment id '" + segments[i].id + "'");
  }
}

const Segment& SegmentIndex::at(std::string_view id) const { return segments_[position(id)]; }

bool SegmentIndex::contains(std::string_view id) const { return by_id_.contains(id); }

std::size_t SegmentIndex::position(std::string_view id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) throw LookupError("unknown segment id '" + std::string(id) + "'");
  return it->second;
}

Money charged_cost(const Segment& segment, Year cluster_year, CostBasis basis) {
  return basis == CostBasis::cluster_year ? segment.cost_at(cluster_year) : segment.scheduled_cost();
}

Money cluster_cost(const Cluster& cluster, const SegmentIndex& segments, CostBasis basis) {
  Money total;
  for (const auto& id : cluster.member_ids) total += charged_cost(segments.at(id), cluster.year, basis);
  return total;
}

// ---- validation ----------------------------------------------------------

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::empty_dataset: return "empty_dataset";
    case IssueKind::empty_schedule: return "empty_schedule";
    case IssueKind::duplicate_id: return "duplicate_id";
    case IssueKind::empty_coords: return "empty_coords";
    case IssueKind::dimension_mismatch: return "dimension_mismatch";
    case IssueKind::non_finite_coordinate: return "non_finite_coordinate";
    case IssueKind::non_positive_cost: return "non_positive_cost";
    case IssueKind::missing_year_cost: return "missing_year_cost";
    case IssueKind::scheduled_year_not_in_schedule: return "scheduled_year_not_in_schedule";
    case IssueKind::years_not_increasing: return "years_not_increasing";
    case IssueKind::non_positive_budget: return "non_positive_budget";
    case IssueKind::negative_tolerance: return "negative_tolerance";
    case IssueKind::low_tolerance_too_large: return "low_tolerance_too_large";
    case IssueKind::conservation_mismatch: return "conservation_mismatch";
  }
  return "?";
}

bool ValidationReport::has_errors(bool strict) const {
  return std::any_of(issues.begin(), issues.end(),
                     [strict](const ValidationIssue& i) { return strict || i.severity == Severity::error; });
}

const ValidationIssue* ValidationReport::find(IssueKind kind) const {
  for (const auto& i : issues)
    if (i.kind == kind) return &i;
  return nullptr;
}

namespace {

ValidationIssue error(IssueKind kind, std::string message) {
  return {Severity::error, kind, std::move(message), std::nullopt, std::nullopt, std::nullopt};
}

ValidationIssue segment_error(IssueKind kind, const Segment& s, std::string message,
                              std::optional<Year> year = std::nullopt) {
  return {Severity::error, kind, "segment '" + s.id + "': " + std::move(message), s.id, year, std::nullopt};
}

}  // namespace

ValidationReport validate_schedule(const BudgetSchedule& schedule) {
  ValidationReport report;
  auto& out = report.issues;
  if (schedule.entries.empty()) out.push_back(error(IssueKind::empty_schedule, "budget schedule has no entries"));

  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const auto& e = schedule.entries[i];
    const std::string where = "year " + std::to_string(e.year) + ": ";
    if (i > 0 && e.year <= schedule.entries[i - 1].year) {
      auto issue = error(IssueKind::years_not_increasing, where + "years must be strictly increasing");
      issue.year = e.year;
      out.push_back(std::move(issue));
    }
    if (e.budget <= Money()) {
      auto issue = error(IssueKind::non_positive_budget, where + "budget must be positive");
      issue.year = e.year;
      issue.amount = e.budget;
      out.push_back(std::move(issue));
    }
    if (e.low_tolerance < Money() || e.high_tolerance < Money()) {
      auto issue = error(IssueKind::negative_tolerance, where + "tolerances must be non-negative");
      issue.year = e.year;
      out.push_back(std::move(issue));
    }
    if (e.low_tolerance >= e.budget && e.budget > Money()) {
      auto issue = error(IssueKind::low_tolerance_too_large, where + "low tolerance must be below the budget");
      issue.year = e.year;
      issue.amount = e.low_tolerance;
      out.push_back(std::move(issue));
    }
  }
  if (schedule.conservation_tolerance < Money())
    out.push_back(error(IssueKind::negative_tolerance, "conservation tolerance must be non-negative"));
  return report;
}

ValidationReport validate_dataset(std::span<const Segment> segments, const BudgetSchedule& schedule) {
  ValidationReport report = validate_schedule(schedule);
  auto& out = report.issues;
  if (segments.empty()) out.push_back(error(IssueKind::empty_dataset, "no segments"));

  const auto years = schedule.years();
  const std::size_t dim = segments.empty() ? 0 : segments.front().coords.size();
  std::unordered_set<std::string_view> seen;
  Money total_cost;

  for (const auto& s : segments) {
    if (!seen.insert(s.id).second) out.push_back(segment_error(IssueKind::duplicate_id, s, "duplicate id"));
    if (s.coords.empty()) {
      out.push_back(segment_error(IssueKind::empty_coords, s, "no coordinates"));
    } else if (s.coords.size() != dim) {
      out.push_back(segment_error(IssueKind::dimension_mismatch, s,
                                  "has " + std::to_string(s.coords.size()) + " coordinates, expected " +
                                      std::to_string(dim)));
    }
    if (std::any_of(s.coords.begin(), s.coords.end(), [](double c) { return !std::isfinite(c); }))
      out.push_back(segment_error(IssueKind::non_finite_coordinate, s, "non-finite coordinate"));

    for (const auto& [year, cost] : s.cost_by_year)
      if (cost <= Money())
        out.push_back(segment_error(IssueKind::non_positive_cost, s,
                                    "cost " + cost.str() + " for year " + std::to_string(year) + " is not positive",
                                    year));
    for (Year y : years)
      if (!s.cost_by_year.contains(y))
        out.push_back(segment_error(IssueKind::missing_year_cost, s, "no cost for year " + std::to_string(y), y));

    if (schedule.find(s.scheduled_year) == nullptr)
      out.push_back(segment_error(IssueKind::scheduled_year_not_in_schedule, s,
                                  "scheduled year " + std::to_string(s.scheduled_year) + " is not in the schedule",
                                  s.scheduled_year));

    if (const auto it = s.cost_by_year.find(s.scheduled_year); it != s.cost_by_year.end()) total_cost += it->second;
  }

  const Money deviation = total_cost - schedule.total_budget();
  if (abs(deviation) > schedule.conservation_tolerance) {
    ValidationIssue issue{Severity::warning, IssueKind::conservation_mismatch,
                          "total scheduled cost " + total_cost.str() + " differs from total budget " +
                              schedule.total_budget().str() + " by " + abs(deviation).str(),
                          std::nullopt, std::nullopt, abs(deviation)};
    out.push_back(std::move(issue));
  }
  return report;
}

std::vector<std::string> partition_violations(const Plan& plan, std::span<const Segment> segments) {
  std::vector<std::string> problems;
  std::unordered_map<std::string_view, int> count;
  for (const auto& s : segments) count.emplace(s.id, 0);

  auto visit = [&](const std::string& id, const std::string& where) {
    auto it = count.find(id);
    if (it == count.end()) {
      problems.push_back(where + " lists unknown id '" + id + "'");
      return;
    }
    if (++it->second == 2) problems.push_back("id '" + id + "' appears more than once");
  };
  for (const auto& c : plan.clusters) {
    for (const auto& id : c.member_ids) visit(id, "cluster " + std::to_string(c.year));
    if (c.center_id && std::find(c.member_ids.begin(), c.member_ids.end(), *c.center_id) == c.member_ids.end())
      problems.push_back("cluster " + std::to_string(c.year) + " center is not a member");
  }
  for (const auto& id : plan.unassigned_ids) visit(id, "unassigned list");
  for (const auto& s : segments)
    if (count[s.id] == 0) problems.push_back("id '" + s.id + "' is missing from the plan");
  return problems;
}

}  // namespace pavesched
