#pragma once

// Shared domain types: segments (maintenance projects), the per-year budget
// schedule, clusters (one per fiscal year) and plans.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pavesched/money.hpp"

namespace pavesched {

using Year = int;
using Coords = std::vector<double>;

struct Segment {
  std::string id;
  Coords coords;
  std::map<Year, Money> cost_by_year;
  Year scheduled_year = 0;

  /// Throws MissingCostError when the table has no entry for `year`.
  Money cost_at(Year year) const;
  Money scheduled_cost() const { return cost_at(scheduled_year); }

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct BudgetEntry {
  Year year = 0;
  Money budget;
  Money low_tolerance;
  Money high_tolerance;

  friend bool operator==(const BudgetEntry&, const BudgetEntry&) = default;
};

struct BudgetSchedule {
  std::vector<BudgetEntry> entries;
  Money conservation_tolerance;

  std::size_t size() const { return entries.size(); }
  std::vector<Year> years() const;
  Money total_budget() const;
  const BudgetEntry* find(Year year) const;

  friend bool operator==(const BudgetSchedule&, const BudgetSchedule&) = default;
};

enum class StopReason { budget_reached, data_exhausted, center_exceeds_budget };

std::string_view to_string(StopReason reason);
StopReason parse_stop_reason(std::string_view text);

struct Admission {
  std::string id;
  Money cumulative_cost;

  friend bool operator==(const Admission&, const Admission&) = default;
};

/// How a cluster grew: the center, every admitted point with the running
/// cost, and why growth stopped. The center is the first admission.
struct ClusterBuildTrace {
  std::string center_id;
  std::vector<Admission> admitted;
  StopReason stop_reason = StopReason::data_exhausted;

  friend bool operator==(const ClusterBuildTrace&, const ClusterBuildTrace&) = default;
};

struct Cluster {
  Year year = 0;
  std::optional<std::string> center_id;  // empty cluster has no center
  std::vector<std::string> member_ids;   // admission order
  Money realized_cost;
  Money budget;

  bool empty() const { return member_ids.empty(); }

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Which year's cost a plan charged for each member.
///   scheduled_year: f(x) = cost at the segment's own scheduled year
///   cluster_year:   f(x) = cost at the year of the cluster it joined
enum class CostBasis { scheduled_year, cluster_year };

std::string_view to_string(CostBasis basis);
CostBasis parse_cost_basis(std::string_view text);

enum class DiagnosticKind {
  over_budget_singleton,
  unassigned_remainder,
  pool_exhausted,
  conservation_mismatch,
};

std::string_view to_string(DiagnosticKind kind);
DiagnosticKind parse_diagnostic_kind(std::string_view text);

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::unassigned_remainder;
  std::optional<Year> year;
  std::vector<std::string> segment_ids;
  std::optional<Money> amount;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct Plan {
  std::vector<Cluster> clusters;           // one per schedule entry, year order
  std::vector<ClusterBuildTrace> traces;   // aligned with clusters
  std::vector<std::string> unassigned_ids;
  std::vector<Diagnostic> diagnostics;
  CostBasis cost_basis = CostBasis::scheduled_year;

  friend bool operator==(const Plan&, const Plan&) = default;
};

/// Non-owning id -> segment lookup. The viewed segments must outlive it.
class SegmentIndex {
 public:
  explicit SegmentIndex(std::span<const Segment> segments);

  const Segment& at(std::string_view id) const;
  bool contains(std::string_view id) const;
  /// Position of `id` in the original input order.
  std::size_t position(std::string_view id) const;
  std::size_t size() const { return segments_.size(); }
  std::span<const Segment> segments() const { return segments_; }

 private:
  std::span<const Segment> segments_;
  std::unordered_map<std::string_view, std::size_t> by_id_;
};

/// Cost charged for `segment` when it belongs to a cluster of `cluster_year`.
Money charged_cost(const Segment& segment, Year cluster_year, CostBasis basis);

/// Sum of member costs at `cluster.year` (or at each member's scheduled
/// year under CostBasis::scheduled_year).
Money cluster_cost(const Cluster& cluster, const SegmentIndex& segments,
                   CostBasis basis = CostBasis::cluster_year);

// ---- validation ----------------------------------------------------------

enum class Severity { warning, error };

enum class IssueKind {
  empty_dataset,
  empty_schedule,
  duplicate_id,
  empty_coords,
  dimension_mismatch,
  non_finite_coordinate,
  non_positive_cost,
  missing_year_cost,
  scheduled_year_not_in_schedule,
  years_not_increasing,
  non_positive_budget,
  negative_tolerance,
  low_tolerance_too_large,
  conservation_mismatch,
};

std::string_view to_string(IssueKind kind);

struct ValidationIssue {
  Severity severity = Severity::error;
  IssueKind kind = IssueKind::empty_dataset;
  std::string message;
  std::optional<std::string> segment_id;
  std::optional<Year> year;
  std::optional<Money> amount;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool empty() const { return issues.empty(); }
  /// True when any issue is an error; with `strict`, warnings count too.
  bool has_errors(bool strict) const;
  const ValidationIssue* find(IssueKind kind) const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate_schedule(const BudgetSchedule& schedule);

/// Checks every dataset invariant plus the global conservation constraint
/// |sum of scheduled costs - sum of budgets| <= conservation_tolerance.
/// Never throws on bad data; conservation is reported as a warning.
ValidationReport validate_dataset(std::span<const Segment> segments, const BudgetSchedule& schedule);

/// Returns human-readable violations of the plan partition property
/// (every input id in exactly one cluster or in unassigned_ids). Empty when
/// the plan is a proper partition of `segments`.
std::vector<std::string> partition_violations(const Plan& plan, std::span<const Segment> segments);

}  // namespace pavesched
