#include "pavesched/radial_clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "pavesched/errors.hpp"
#include "plan_driver.hpp"

namespace pavesched {

Money admission_cost(const Segment& segment, const RadialOptions& options) {
  if (options.basis == CostBasis::cluster_year) {
    if (!options.year) throw InvalidArgument("cluster-year costing needs a cluster year");
    return segment.cost_at(*options.year);
  }
  return segment.scheduled_cost();
}

ClusterResult grow_radially(const Segment& center, std::span<const RankedSegment> ranked, Money cap,
                            const RadialOptions& options) {
  ClusterResult out;
  out.cluster.year = options.year.value_or(center.scheduled_year);
  out.cluster.center_id = center.id;
  out.cluster.budget = cap;
  out.trace.center_id = center.id;

  Money total = admission_cost(center, options);
  out.cluster.member_ids.push_back(center.id);
  out.trace.admitted.push_back({center.id, total});

  if (total >= cap) {
    out.cluster.realized_cost = total;
    out.trace.stop_reason = StopReason::center_exceeds_budget;
    return out;
  }

  bool missed = false;
  for (const auto& r : ranked) {
    const Money cost = admission_cost(*r.segment, options);
    if (total + cost > cap) {
      missed = true;
      if (options.mode == AdmissionMode::prefix) break;
      continue;
    }
    total += cost;
    out.cluster.member_ids.push_back(r.segment->id);
    out.trace.admitted.push_back({r.segment->id, total});
  }
  out.cluster.realized_cost = total;
  out.trace.stop_reason = missed ? StopReason::budget_reached : StopReason::data_exhausted;
  return out;
}

ClusterResult radial_neighbor_clustering(std::span<const Segment* const> pool, const Segment& center, Money p,
                                         const RadialOptions& options) {
  if (p <= Money()) throw InvalidArgument("cluster budget must be positive, got " + p.str());
  const auto ranked = rank_by_distance(pool, center);
  return grow_radially(center, ranked, p, options);
}

ClusterResult radial_neighbor_clustering(std::span<const Segment> pool, const Segment& center, Money p,
                                         const RadialOptions& options) {
  const auto refs = refs_of(pool);
  return radial_neighbor_clustering(refs, center, p, options);
}

// ---- SeededRng -------------------------------------------------------------

std::uint64_t SeededRng::uniform_index(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("uniform_index over an empty range");
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % n;
}

double SeededRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeededRng::normal(double mean, double stddev) {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return mean + stddev * z;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return mean + stddev * radius * std::cos(angle);
}

// ---- plan drivers ----------------------------------------------------------

namespace detail {

Plan drive_plan(std::span<const Segment> segments, const BudgetSchedule& schedule, CostBasis basis,
                const CenterChooser& choose, const ClusterMaker& make) {
  if (segments.empty()) throw InvalidArgument("no segments to cluster");
  SegmentIndex index(segments);  // rejects duplicate ids

  Plan plan;
  plan.cost_basis = basis;
  SegmentRefs remaining = refs_of(segments);
  SegmentRefs clustered;

  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const auto& entry = schedule.entries[i];
    if (remaining.empty()) {
      plan.clusters.push_back({entry.year, std::nullopt, {}, Money(), entry.budget});
      plan.traces.push_back({});
      plan.diagnostics.push_back({DiagnosticKind::pool_exhausted, entry.year, {}, std::nullopt,
                                  "no segments left for year " + std::to_string(entry.year)});
      continue;
    }

    const Segment& center = *remaining[choose(remaining, clustered, i)];
    ClusterResult built = make(remaining, center, entry);

    if (built.trace.stop_reason == StopReason::center_exceeds_budget && built.cluster.realized_cost > entry.budget) {
      plan.diagnostics.push_back({DiagnosticKind::over_budget_singleton, entry.year, {center.id},
                                  built.cluster.realized_cost,
                                  "center '" + center.id + "' costs " + built.cluster.realized_cost.str() +
                                      ", above the " + std::to_string(entry.year) + " budget " +
                                      entry.budget.str()});
    }

    const std::unordered_set<std::string_view> members(built.cluster.member_ids.begin(),
                                                       built.cluster.member_ids.end());
    for (const auto& id : built.cluster.member_ids) clustered.push_back(&index.at(id));
    std::erase_if(remaining, [&](const Segment* s) { return members.contains(s->id); });

    plan.clusters.push_back(std::move(built.cluster));
    plan.traces.push_back(std::move(built.trace));
  }

  if (!remaining.empty()) {
    Diagnostic d{DiagnosticKind::unassigned_remainder, std::nullopt, {}, Money(), {}};
    for (const Segment* s : remaining) {
      plan.unassigned_ids.push_back(s->id);
      d.segment_ids.push_back(s->id);
      *d.amount += s->scheduled_cost();
    }
    d.message = std::to_string(remaining.size()) + " segment(s) costing " + d.amount->str() +
                " did not fit any year's budget";
    plan.diagnostics.push_back(std::move(d));
  }
  return plan;
}

CenterChooser landmark_chooser(std::span<const Segment> segments, std::size_t axis) {
  const std::string first = select_initial_center(segments, axis).id;
  return [first](const SegmentRefs& remaining, const SegmentRefs& clustered, std::size_t entry) -> std::size_t {
    if (entry == 0 || clustered.empty()) {
      const auto it = std::find_if(remaining.begin(), remaining.end(),
                                   [&](const Segment* s) { return s->id == first; });
      return static_cast<std::size_t>(it - remaining.begin());
    }
    return furthest_point_index(remaining, clustered);
  };
}

}  // namespace detail

Plan main_algorithm(std::span<const Segment> segments, const BudgetSchedule& schedule, std::uint64_t seed,
                    AdmissionMode mode) {
  SeededRng rng(seed);
  auto choose = [&rng](const SegmentRefs& remaining, const SegmentRefs&, std::size_t) {
    return static_cast<std::size_t>(rng.uniform_index(remaining.size()));
  };
  auto make = [mode](const SegmentRefs& remaining, const Segment& center, const BudgetEntry& entry) {
    return radial_neighbor_clustering(remaining, center, entry.budget,
                                      {mode, CostBasis::scheduled_year, entry.year});
  };
  return detail::drive_plan(segments, schedule, CostBasis::scheduled_year, choose, make);
}

const Segment& select_initial_center(std::span<const Segment> segments, std::size_t axis) {
  if (segments.empty()) throw InvalidArgument("initial center of an empty dataset");
  const Segment* best = nullptr;
  for (const auto& s : segments) {
    if (axis >= s.coords.size())
      throw InvalidArgument("axis " + std::to_string(axis) + " out of range for segment '" + s.id + "' with " +
                            std::to_string(s.coords.size()) + " coordinates");
    if (best == nullptr || s.coords[axis] > best->coords[axis] ||
        (s.coords[axis] == best->coords[axis] && s.id < best->id))
      best = &s;
  }
  return *best;
}

Plan landmark_based_radial_clustering(std::span<const Segment> segments, const BudgetSchedule& schedule,
                                      std::size_t axis, AdmissionMode mode) {
  if (segments.empty()) throw InvalidArgument("no segments to cluster");
  auto make = [mode](const SegmentRefs& remaining, const Segment& center, const BudgetEntry& entry) {
    return radial_neighbor_clustering(remaining, center, entry.budget,
                                      {mode, CostBasis::scheduled_year, entry.year});
  };
  return detail::drive_plan(segments, schedule, CostBasis::scheduled_year, detail::landmark_chooser(segments, axis),
                            make);
}

}  // namespace pavesched
