#include <doctest.h>

#include "pavesched/errors.hpp"
#include "pavesched/metrics.hpp"
#include "pavesched/radial_clustering.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("two points six apart") {
  const std::vector<Segment> s{seg("a", {0, 0}, units(1)), seg("b", {6, 0}, units(1))};
  Plan plan;
  plan.clusters.push_back(Cluster{2018, "a", {"a", "b"}, units(2), units(2)});
  const auto m = compute_metrics(plan, budgets({units(2)}), s);
  REQUIRE(m.per_year.size() == 1);
  CHECK(m.per_year[0].mean_member_distance_to_center == 3.0);
  CHECK(m.per_year[0].mean_pairwise_distance == 6.0);
  CHECK(m.per_year[0].utilization == 1.0);
  CHECK(m.overall.weighted_mean_dispersion == 6.0);
}

TEST_CASE("singleton and empty clusters have zero dispersion") {
  const std::vector<Segment> s{seg("a", {0, 0}, units(1))};
  Plan plan;
  plan.clusters.push_back(Cluster{2018, "a", {"a"}, units(1), units(2)});
  plan.clusters.push_back(Cluster{2019, {}, {}, Money(), units(2)});
  const auto m = compute_metrics(plan, budgets({units(2), units(2)}), s);
  for (const auto& y : m.per_year) {
    CHECK(y.mean_member_distance_to_center == 0.0);
    CHECK(y.mean_pairwise_distance == 0.0);
  }
  CHECK(m.per_year[0].utilization == 0.5);
  CHECK(m.per_year[1].utilization == 0.0);
}

TEST_CASE("utilization from Table 1's last row") {
  const std::vector<Segment> s{seg("a", {0, 0}, Money::parse("841152.51"), 2022)};
  Plan plan;
  plan.clusters.push_back(Cluster{2022, "a", {"a"}, Money::parse("841152.51"), Money::parse("1374971.50")});
  const auto m = compute_metrics(plan, budgets({Money::parse("1374971.50")}, 2022), s);
  CHECK(m.per_year[0].utilization == doctest::Approx(0.6118).epsilon(1e-4));
  CHECK(m.overall.total_deviation == Money::parse("-533818.99"));
}

TEST_CASE("over-budget singleton reports utilization above one") {
  const std::vector<Segment> s{seg("big", {9, 9}, units(5)), seg("x", {0, 0}, units(1))};
  const auto plan = landmark_based_radial_clustering(s, budgets({units(2)}));
  const auto m = compute_metrics(plan, budgets({units(2)}), s);
  CHECK(m.per_year[0].utilization == 2.5);
  CHECK(m.per_year[0].over_budget);
  CHECK(m.unassigned_count == 1);
}

TEST_CASE("medoid stands in for a missing center") {
  const std::vector<Segment> s{seg("a", {0, 0}, units(1)), seg("b", {1, 0}, units(1)), seg("c", {5, 0}, units(1))};
  Plan plan;
  plan.clusters.push_back(Cluster{2018, {}, {"a", "b", "c"}, units(3), units(3)});
  const auto m = compute_metrics(plan, budgets({units(3)}), s);
  // Medoid is b (row sum 1 + 4 = 5): distances 1, 0, 4.
  CHECK(m.per_year[0].mean_member_distance_to_center == doctest::Approx(5.0 / 3.0));
  CHECK(m.per_year[0].mean_pairwise_distance == doctest::Approx(10.0 / 3.0));
}

TEST_CASE("overall totals") {
  std::mt19937_64 gen(6);
  RandomSpec spec{.n = 100};
  const auto s = random_segments(gen, spec);
  const auto b = random_budgets(gen, spec);
  const auto plan = landmark_based_radial_clustering(s, b);
  const auto m = compute_metrics(plan, b, s);
  Money sum;
  for (const auto& y : m.per_year) sum += y.realized_cost;
  CHECK(sum == m.overall.total_cost);
  CHECK(m.overall.total_budget == b.total_budget());
  CHECK(m.overall.total_deviation == m.overall.total_cost - m.overall.total_budget);
  CHECK(m.unassigned_count == plan.unassigned_ids.size());
  CHECK(m == compute_metrics(plan, b, s));
}

TEST_CASE("unknown id is an error") {
  Plan plan;
  plan.clusters.push_back(Cluster{2018, "zz", {"zz"}, units(1), units(1)});
  CHECK_THROWS_AS(compute_metrics(plan, budgets({units(1)}), {}), LookupError);
}

TEST_CASE("initial_schedule_plan follows scheduled years") {
  std::vector<Segment> s{seg("a", {0, 0}, units(1), 2018), seg("b", {1, 0}, units(2), 2019),
                         seg("c", {2, 0}, units(3), 2018), seg("d", {3, 0}, units(4), 2025)};
  const auto plan = initial_schedule_plan(s, budgets({units(4), units(2)}));
  REQUIRE(plan.clusters.size() == 2);
  CHECK(plan.clusters[0].member_ids == std::vector<std::string>{"a", "c"});
  CHECK(plan.clusters[0].realized_cost == units(4));
  CHECK_FALSE(plan.clusters[0].center_id.has_value());
  CHECK(plan.clusters[1].member_ids == std::vector<std::string>{"b"});
  CHECK(plan.unassigned_ids == std::vector<std::string>{"d"});
  CHECK(partition_violations(plan, s).empty());
}

TEST_CASE("compare_plans") {
  // Blob A at x 0..1, blob B at x 100..101; the initial schedule splits
  // each blob across both years.
  std::vector<Segment> s{seg("a1", {0, 0}, units(1), 2018, {2019}),   seg("a2", {1, 0}, units(1), 2019, {2018}),
                         seg("b1", {100, 0}, units(1), 2019, {2018}), seg("b2", {101, 0}, units(1), 2018, {2019})};
  const auto schedule = budgets({units(2), units(2)});
  const auto before = initial_schedule_plan(s, schedule);

  SUBCASE("identity") {
    const auto c = compare_plans(before, before, schedule, s);
    CHECK(c.dispersion_delta == 0.0);
    CHECK(c.center_distance_delta == 0.0);
    CHECK(c.moved == 0);
    CHECK(c.year_shift_histogram.empty());
    for (const auto& y : c.per_year) CHECK(y.pairwise_delta == 0.0);
  }
  SUBCASE("grouping the blobs tightens the plan") {
    const auto after = landmark_based_radial_clustering(s, schedule);
    const auto c = compare_plans(before, after, schedule, s);
    CHECK(c.dispersion_delta < 0.0);
    CHECK(c.dispersion_after < c.dispersion_before);
    CHECK(c.moved == 2);
  }
  SUBCASE("one segment one year earlier") {
    Plan after = before;
    after.clusters[1].member_ids = {"b1"};  // a2 leaves 2019
    after.clusters[0].member_ids.push_back("a2");
    const auto c = compare_plans(before, after, schedule, s);
    CHECK(c.moved == 1);
    CHECK(c.year_shift_histogram == std::map<int, std::size_t>{{-1, 1}});
  }
  SUBCASE("newly unassigned and universe mismatch") {
    Plan after = before;
    after.clusters[1].member_ids = {"b1"};
    after.unassigned_ids = {"a2"};
    const auto c = compare_plans(before, after, schedule, s);
    CHECK(c.newly_unassigned == 1);
    CHECK(c.moved == 0);
    Plan broken = before;
    broken.clusters[0].member_ids.pop_back();
    CHECK_THROWS_AS(compare_plans(before, broken, schedule, s), InvalidArgument);
  }
}
