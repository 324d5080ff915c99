#pragma once

// Schedule- and cost-aware cluster construction around one center.
//
// Three radial clusters share the center: C_low (cap p - e_low), C_mid
// (cap p) and C_high (cap p + e_high). With prefix admission they nest,
// C_low ⊆ C_mid ⊆ C_high. The final cluster keeps all of C_low (closeness
// wins near the center) and fills the remaining budget from the band
// C_high - C_low ordered by scheduled year, then cost, instead of distance.

#include <span>
#include <vector>

#include "pavesched/core_model.hpp"
#include "pavesched/errors.hpp"
#include "pavesched/radial_clustering.hpp"

namespace pavesched {

struct ToleranceBand {
  ClusterResult low;   // cap p - e_low
  ClusterResult mid;   // cap p
  ClusterResult high;  // cap p + e_high
  std::vector<std::string> band_ids;  // high minus low, in band order
};

/// Throws InvalidArgument when p - e_low <= 0, a tolerance is negative, or
/// the center is not in the pool. The three runs always use prefix
/// admission (which is what makes them nest); `options.mode` is ignored here.
ToleranceBand build_tolerance_band(std::span<const Segment* const> pool, const Segment& center, Money p,
                                   Money e_low, Money e_high, const RadialOptions& options = {});
ToleranceBand build_tolerance_band(std::span<const Segment> pool, const Segment& center, Money p, Money e_low,
                                   Money e_high, const RadialOptions& options = {});

/// Sorts band points by scheduled year (earlier and past-due first), then
/// cost under `options`, then distance to the center, then id.
SegmentRefs band_order(std::span<const Segment* const> band, const Segment& center,
                       const RadialOptions& options = {});
SegmentRefs band_order(std::span<const Segment> band, const Segment& center, const RadialOptions& options = {});

/// The final cluster: C_low, then band points in band order while the total
/// stays within p. `options.mode` selects prefix or skip admission over the band.
ClusterResult schedule_aware_cluster(std::span<const Segment* const> pool, const Segment& center, Money p,
                                     Money e_low, Money e_high, const RadialOptions& options = {});
ClusterResult schedule_aware_cluster(std::span<const Segment> pool, const Segment& center, Money p, Money e_low,
                                     Money e_high, const RadialOptions& options = {});

/// Thrown when a dataset fails validation before planning.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

struct ScheduleAwareOptions {
  std::size_t axis = 0;
  AdmissionMode mode = AdmissionMode::prefix;
  /// Treat a conservation mismatch as a validation failure.
  bool strict_conservation = false;
};

/// Landmark center selection with schedule-aware clusters, each year built
/// from that entry's (budget, e_low, e_high). Every admission charges the
/// segment's cost at the cluster's year. Throws ValidationError when the
/// dataset has errors (or, in strict mode, any issue at all).
Plan schedule_aware_plan(std::span<const Segment> segments, const BudgetSchedule& schedule,
                         const ScheduleAwareOptions& options = {});

}  // namespace pavesched
