#pragma once

// Shared loop behind every plan algorithm: pick a center from the remaining
// pool, build that year's cluster, subtract it, repeat once per schedule
// entry, then report what is left over.

#include <functional>
#include <span>

#include "pavesched/core_model.hpp"
#include "pavesched/geometry.hpp"
#include "pavesched/radial_clustering.hpp"

namespace pavesched::detail {

/// Returns a position in `remaining`. `clustered` holds every segment
/// already placed, in placement order.
using CenterChooser =
    std::function<std::size_t(const SegmentRefs& remaining, const SegmentRefs& clustered, std::size_t entry)>;

using ClusterMaker =
    std::function<ClusterResult(const SegmentRefs& remaining, const Segment& center, const BudgetEntry& entry)>;

Plan drive_plan(std::span<const Segment> segments, const BudgetSchedule& schedule, CostBasis basis,
                const CenterChooser& choose, const ClusterMaker& make);

/// Landmark center rule: initial center by maximum coordinate on `axis`,
/// then the remaining point farthest from everything clustered so far.
CenterChooser landmark_chooser(std::span<const Segment> segments, std::size_t axis);

}  // namespace pavesched::detail
