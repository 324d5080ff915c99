#pragma once

// Text formats: segment / budget / cost-matrix CSV in, plan documents
// (canonical JSON) and schematic SVG maps out.
//
// Segment CSV header:  id,<coord>[,<coord>...],scheduled_year[,cost | ,Y<year>...]
//   Every column between id and scheduled_year is a coordinate. A single
//   `cost` column is the cost at every horizon year (a flat table); `Y2019`
//   style columns give the cost for that year explicitly. With neither, the
//   costs must come from a separate cost-matrix CSV.
// Budget CSV header:   year,budget[,e_l,e_h]
// Cost-matrix CSV:     id,Y<year1>,Y<year2>,...
// Money is decimal text with at most two fractional digits.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pavesched/core_model.hpp"
#include "pavesched/cost_model.hpp"
#include "pavesched/metrics.hpp"

namespace pavesched {

inline constexpr std::string_view kPlanFormatVersion = "1";

/// Row order is preserved. `horizon` lists the years a scalar `cost` column
/// is expanded over; the scheduled year is always included.
/// Throws ParseError naming the row and column on any defect.
std::vector<Segment> load_segments(std::string_view csv_text, std::span<const Year> horizon = {});

BudgetSchedule load_budgets(std::string_view csv_text, Money conservation_tolerance = Money());

CostScenarioMatrix load_cost_matrix(std::string_view csv_text);

enum class CostColumns { scalar, per_year };

/// `scalar` writes each segment's scheduled-year cost in a `cost` column;
/// `per_year` writes one Y<year> column per year of `years`.
std::string emit_segments(std::span<const Segment> segments, CostColumns form = CostColumns::scalar,
                          std::span<const Year> years = {});
std::string emit_budgets(const BudgetSchedule& schedule);
std::string emit_cost_matrix(const CostScenarioMatrix& matrix);

/// Lower-case hex SHA-256 over the given inputs, each framed by its length,
/// so that moving bytes between inputs changes the digest.
std::string digest_inputs(std::span<const std::string_view> inputs);

// ---- plan documents --------------------------------------------------------

struct MemberRecord {
  std::string id;
  Coords coords;
  Year scheduled_year = 0;
  std::optional<Year> assigned_year;  // empty for unassigned segments
  Money cost_used;                    // charged cost; scheduled-year cost when unassigned

  friend bool operator==(const MemberRecord&, const MemberRecord&) = default;
};

struct ClusterRecord {
  Year year = 0;
  Money budget;
  std::optional<std::string> center_id;
  Money realized_cost;
  std::optional<StopReason> stop_reason;
  std::vector<MemberRecord> members;

  friend bool operator==(const ClusterRecord&, const ClusterRecord&) = default;
};

struct PlanDocument {
  std::string format_version{kPlanFormatVersion};
  std::string algorithm;
  std::string input_digest;
  CostBasis cost_basis = CostBasis::scheduled_year;
  BudgetSchedule schedule;
  std::vector<ClusterRecord> clusters;
  std::vector<MemberRecord> unassigned;
  PlanMetrics metrics;
  std::vector<Diagnostic> diagnostics;

  friend bool operator==(const PlanDocument&, const PlanDocument&) = default;
};

PlanDocument make_plan_document(const Plan& plan, const PlanMetrics& metrics, const BudgetSchedule& schedule,
                                std::span<const Segment> segments, std::string algorithm, std::string input_digest);

/// Canonical JSON: fixed key order, money as two-decimal strings, shortest
/// round-trip numbers, two-space indent, trailing newline.
std::string emit_plan(const PlanDocument& document);

/// Throws ParseError on malformed JSON or schema violations.
PlanDocument parse_plan(std::string_view json_text);

/// The plan a document describes (traces carry only the stop reason and the
/// members with their running cost).
Plan plan_from_document(const PlanDocument& document);

/// Segments a document mentions. Each cost table holds the one cost the
/// document records, keyed by the year it was charged at (the assigned year
/// under cluster_year costing, otherwise the scheduled year).
std::vector<Segment> segments_from_document(const PlanDocument& document);

/// Standalone JSON for metrics and plan comparisons (same conventions as
/// emit_plan).
std::string emit_metrics(const PlanMetrics& metrics);
std::string emit_comparison(const PlanComparison& comparison);

// ---- SVG -------------------------------------------------------------------

/// Planar map: one marker per segment colored by assigned year (unassigned in
/// grey), cluster centers ringed, and a year legend. Throws InvalidArgument
/// unless every segment has exactly two coordinates.
std::string render_plan_svg(const Plan& plan, std::span<const Segment> segments);

}  // namespace pavesched
