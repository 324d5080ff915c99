#include "pavesched/schedule_refinement.hpp"

#include <algorithm>
#include <unordered_set>

#include "plan_driver.hpp"

namespace pavesched {

namespace {

void check_band_args(Money p, Money e_low, Money e_high) {
  if (e_low < Money() || e_high < Money()) throw InvalidArgument("tolerances must be non-negative");
  if (p - e_low <= Money())
    throw InvalidArgument("budget minus low tolerance must be positive (p=" + p.str() + ", e_low=" + e_low.str() + ")");
}

void sort_band(std::vector<RankedSegment>& band, const RadialOptions& options) {
  std::stable_sort(band.begin(), band.end(), [&](const RankedSegment& a, const RankedSegment& b) {
    if (a.segment->scheduled_year != b.segment->scheduled_year)
      return a.segment->scheduled_year < b.segment->scheduled_year;
    const Money ca = admission_cost(*a.segment, options);
    const Money cb = admission_cost(*b.segment, options);
    if (ca != cb) return ca < cb;
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.segment->id < b.segment->id;
  });
}

struct Band {
  ToleranceBand band;
  std::vector<RankedSegment> ordered;  // band points in band order
};

// All three caps share one center, so one distance ranking serves them all.
Band make_band(const Segment& center, std::span<const RankedSegment> ranked, Money p, Money e_low, Money e_high,
               const RadialOptions& options) {
  RadialOptions prefix = options;
  prefix.mode = AdmissionMode::prefix;

  Band out;
  out.band.low = grow_radially(center, ranked, p - e_low, prefix);
  out.band.mid = grow_radially(center, ranked, p, prefix);
  out.band.high = grow_radially(center, ranked, p + e_high, prefix);

  const std::unordered_set<std::string_view> low(out.band.low.cluster.member_ids.begin(),
                                                 out.band.low.cluster.member_ids.end());
  const std::unordered_set<std::string_view> high(out.band.high.cluster.member_ids.begin(),
                                                  out.band.high.cluster.member_ids.end());
  for (const auto& r : ranked)
    if (high.contains(r.segment->id) && !low.contains(r.segment->id)) out.ordered.push_back(r);
  sort_band(out.ordered, options);
  for (const auto& r : out.ordered) out.band.band_ids.push_back(r.segment->id);
  return out;
}

ClusterResult assemble_final(const Band& b, Money p, const RadialOptions& options) {
  const auto& low = b.band.low;
  const auto& mid = b.band.mid;

  // Center alone is at or over p: the single-point rule decides everything.
  if (mid.trace.stop_reason == StopReason::center_exceeds_budget) {
    ClusterResult out = mid;
    out.cluster.budget = p;
    return out;
  }

  ClusterResult out;
  out.cluster.year = low.cluster.year;
  out.cluster.center_id = low.cluster.center_id;
  out.cluster.budget = p;
  out.cluster.member_ids = low.cluster.member_ids;
  out.trace.center_id = low.trace.center_id;
  out.trace.admitted = low.trace.admitted;
  Money total = low.cluster.realized_cost;

  bool missed = false;
  for (const auto& r : b.ordered) {
    const Money cost = admission_cost(*r.segment, options);
    if (total + cost > p) {
      missed = true;
      if (options.mode == AdmissionMode::prefix) break;
      continue;
    }
    total += cost;
    out.cluster.member_ids.push_back(r.segment->id);
    out.trace.admitted.push_back({r.segment->id, total});
  }
  out.cluster.realized_cost = total;
  out.trace.stop_reason = missed ? StopReason::budget_reached : b.band.high.trace.stop_reason;
  return out;
}

}  // namespace

ToleranceBand build_tolerance_band(std::span<const Segment* const> pool, const Segment& center, Money p,
                                   Money e_low, Money e_high, const RadialOptions& options) {
  check_band_args(p, e_low, e_high);
  const auto ranked = rank_by_distance(pool, center);
  return make_band(center, ranked, p, e_low, e_high, options).band;
}

ToleranceBand build_tolerance_band(std::span<const Segment> pool, const Segment& center, Money p, Money e_low,
                                   Money e_high, const RadialOptions& options) {
  const auto refs = refs_of(pool);
  return build_tolerance_band(refs, center, p, e_low, e_high, options);
}

SegmentRefs band_order(std::span<const Segment* const> band, const Segment& center, const RadialOptions& options) {
  std::vector<RankedSegment> ranked;
  ranked.reserve(band.size());
  for (const Segment* s : band) ranked.push_back({s, distance(center.coords, s->coords)});
  sort_band(ranked, options);
  SegmentRefs out;
  out.reserve(ranked.size());
  for (const auto& r : ranked) out.push_back(r.segment);
  return out;
}

SegmentRefs band_order(std::span<const Segment> band, const Segment& center, const RadialOptions& options) {
  const auto refs = refs_of(band);
  return band_order(refs, center, options);
}

ClusterResult schedule_aware_cluster(std::span<const Segment* const> pool, const Segment& center, Money p,
                                     Money e_low, Money e_high, const RadialOptions& options) {
  check_band_args(p, e_low, e_high);
  const auto ranked = rank_by_distance(pool, center);
  return assemble_final(make_band(center, ranked, p, e_low, e_high, options), p, options);
}

ClusterResult schedule_aware_cluster(std::span<const Segment> pool, const Segment& center, Money p, Money e_low,
                                     Money e_high, const RadialOptions& options) {
  const auto refs = refs_of(pool);
  return schedule_aware_cluster(refs, center, p, e_low, e_high, options);
}

namespace {

std::string summarize(const ValidationReport& report) {
  std::string out = "dataset failed validation";
  for (const auto& issue : report.issues) out += "\n  " + issue.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(ValidationReport report) : Error(summarize(report)), report_(std::move(report)) {}

Plan schedule_aware_plan(std::span<const Segment> segments, const BudgetSchedule& schedule,
                         const ScheduleAwareOptions& options) {
  if (segments.empty()) throw InvalidArgument("no segments to cluster");
  auto report = validate_dataset(segments, schedule);
  if (report.has_errors(options.strict_conservation)) throw ValidationError(std::move(report));

  auto make = [mode = options.mode](const SegmentRefs& remaining, const Segment& center, const BudgetEntry& entry) {
    return schedule_aware_cluster(remaining, center, entry.budget, entry.low_tolerance, entry.high_tolerance,
                                  {mode, CostBasis::cluster_year, entry.year});
  };
  return detail::drive_plan(segments, schedule, CostBasis::cluster_year,
                            detail::landmark_chooser(segments, options.axis), make);
}

}  // namespace pavesched
