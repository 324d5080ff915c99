// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "pavesched/cost_model.hpp"
#include "pavesched/metrics.hpp"
#include "pavesched/radial_clustering.hpp"
#include "pavesched/schedule_refinement.hpp"
#include "pavesched/synth.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

RandomSpec random_spec(std::mt19937_64& gen, std::size_t max_n, bool flat) {
  RandomSpec spec;
  spec.n = std::uniform_int_distribution<std::size_t>(1, max_n)(gen);
  spec.dims = std::uniform_int_distribution<std::size_t>(1, 3)(gen);
  spec.years.clear();
  const auto n_years = std::uniform_int_distribution<int>(1, 6)(gen);
  for (int y = 0; y < n_years; ++y) spec.years.push_back(2018 + y);
  spec.grid = std::uniform_int_distribution<int>(0, 1)(gen) ? 1.0 : 7.0;
  spec.flat = flat;
  if (std::uniform_int_distribution<int>(0, 1)(gen)) spec.cost_step = 100;
  return spec;
}

// 1. Every cluster from every algorithm fits its budget unless flagged.
Outcome budget_feasibility() {
  std::mt19937_64 gen(1001);
  std::size_t clusters = 0, flagged = 0, violations = 0;
  for (int instance = 0; instance < 1000; ++instance) {
    const auto spec = random_spec(gen, 500, instance % 2 == 0);
    const auto segments = random_segments(gen, spec);
    const auto schedule = random_budgets(gen, spec, std::uniform_real_distribution<double>(0.0, 0.3)(gen));
    const auto mode = instance % 3 == 0 ? AdmissionMode::skip : AdmissionMode::prefix;
    const Plan plans[] = {main_algorithm(segments, schedule, static_cast<std::uint64_t>(instance), mode),
                          landmark_based_radial_clustering(segments, schedule, instance % spec.dims, mode),
                          schedule_aware_plan(segments, schedule, {instance % spec.dims, mode, false})};
    const SegmentIndex index(segments);
    for (const auto& plan : plans) {
      if (!partition_violations(plan, segments).empty()) ++violations;
      for (std::size_t i = 0; i < plan.clusters.size(); ++i) {
        const auto& c = plan.clusters[i];
        ++clusters;
        if (cluster_cost(c, index, plan.cost_basis) != c.realized_cost) ++violations;
        if (c.realized_cost <= schedule.entries[i].budget) continue;
        if (plan.traces[i].stop_reason == StopReason::center_exceeds_budget && c.member_ids.size() == 1)
          ++flagged;
        else
          ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(clusters) + " clusters, " + std::to_string(flagged) +
                               " flagged over-budget singletons, " + std::to_string(violations) + " violations"};
}

// 2. C_l ⊆ C ⊆ C_h (and C_l ⊆ C_F ⊆ C_h).
Outcome nesting() {
  std::mt19937_64 gen(2002);
  std::size_t failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto spec = random_spec(gen, 200, trial % 2 == 0);
    const auto pool = random_segments(gen, spec);
    const auto& center = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(gen)];
    const Money p = cents(std::uniform_int_distribution<std::int64_t>(2, 400'000)(gen));
    const Money el = cents(std::uniform_int_distribution<std::int64_t>(0, p.cents() - 1)(gen));
    const Money eh = cents(std::uniform_int_distribution<std::int64_t>(0, 200'000)(gen));
    const Year year = spec.years[static_cast<std::size_t>(trial) % spec.years.size()];
    const RadialOptions options{trial % 3 == 0 ? AdmissionMode::skip : AdmissionMode::prefix,
                                CostBasis::cluster_year, year};
    const auto band = build_tolerance_band(pool, center, p, el, eh, options);
    const auto lo = ids(band.low.cluster.member_ids), mid = ids(band.mid.cluster.member_ids),
               hi = ids(band.high.cluster.member_ids);
    const auto final_ids = ids(schedule_aware_cluster(pool, center, p, el, eh, options).cluster.member_ids);
    if (!subset(lo, mid) || !subset(mid, hi) || !subset(lo, final_ids) || !subset(final_ids, hi)) ++failures;
  }
  return {failures == 0, "1000 band builds, " + std::to_string(failures) + " failures"};
}

// 3. Engine vs brute-force oracle.
Outcome oracle_equivalence() {
  std::mt19937_64 gen(3003);
  std::size_t prefix_mismatch = 0, furthest_mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto spec = random_spec(gen, 200, true);
    const auto pool = random_segments(gen, spec);
    const auto& center = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(gen)];
    Money p = cents(std::uniform_int_distribution<std::int64_t>(1, 500'000)(gen));
    if (spec.cost_step > 1) p = cents(std::max<std::int64_t>(p.cents() / spec.cost_step, 1) * spec.cost_step);
    if (ids(radial_neighbor_clustering(pool, center, p).cluster.member_ids) != oracle::prefix_cluster(pool, center, p))
      ++prefix_mismatch;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    auto spec = random_spec(gen, 200, true);
    const auto X = random_segments(gen, spec);
    std::vector<Coords> S;
    const int keep = std::uniform_int_distribution<int>(1, 10)(gen);
    for (const auto& s : X)
      if (std::uniform_int_distribution<int>(1, 10)(gen) <= keep) S.push_back(s.coords);
    if (S.empty()) S.push_back(X.front().coords);
    if (furthest_point_from_cluster(X, S).id != oracle::furthest_point(X, S)) ++furthest_mismatch;
  }
  return {prefix_mismatch == 0 && furthest_mismatch == 0,
          "1000+1000 trials, " + std::to_string(prefix_mismatch) + " prefix and " +
              std::to_string(furthest_mismatch) + " furthest-point mismatches"};
}

// 4. e_l = e_h = 0 with flat costs: schedule-aware plan == landmark plan.
Outcome reduction_identity() {
  std::mt19937_64 gen(4004);
  std::size_t mismatches = 0;
  for (int instance = 0; instance < 100; ++instance) {
    auto spec = random_spec(gen, 400, true);
    const auto segments = random_segments(gen, spec);
    const auto schedule = random_budgets(gen, spec);
    const std::size_t axis = static_cast<std::size_t>(instance) % spec.dims;
    const auto a = schedule_aware_plan(segments, schedule, {axis, AdmissionMode::prefix, false});
    const auto b = landmark_based_radial_clustering(segments, schedule, axis);
    if (a.clusters != b.clusters || a.traces != b.traces || a.unassigned_ids != b.unassigned_ids ||
        a.diagnostics != b.diagnostics)
      ++mismatches;
  }
  return {mismatches == 0, "100 instances, " + std::to_string(mismatches) + " mismatches"};
}

// 5. Conservation accounting is exact.
Outcome conservation() {
  std::size_t failures = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthParams params;
    params.n = 200 + 40 * seed;
    params.blobs = 2 + seed % 5;
    params.seed = seed;
    params.growth_rate = seed % 2 ? 0.0 : 0.03;
    params.tolerance_fraction = 0.05;
    const auto d = synthesize_dataset(params);
    if (validate_dataset(d.segments, d.schedule).find(IssueKind::conservation_mismatch)) ++failures;
    const auto initial = conservation_report(initial_schedule_plan(d.segments, d.schedule), d.schedule, d.segments);
    if (initial.total_deviation != Money() || initial.total_cost != initial.total_budget) ++failures;

    // Clustered plan with flat costs: what is not spent is exactly what was left out.
    if (params.growth_rate == 0.0) {
      const auto plan = schedule_aware_plan(d.segments, d.schedule);
      const auto r = conservation_report(plan, d.schedule, d.segments);
      const SegmentIndex index(d.segments);
      Money left_out;
      for (const auto& id : plan.unassigned_ids) left_out += index.at(id).scheduled_cost();
      if (r.total_deviation != -left_out) ++failures;
    }
  }

  const std::vector<YearBalance> table{{2018, Money::parse("1047131.09"), Money::parse("1080947.98"), {}},
                                       {2019, Money::parse("7481612.12"), Money::parse("7742091.49"), {}},
                                       {2020, Money::parse("6551389.79"), Money::parse("6751923.97"), {}},
                                       {2021, Money::parse("4856840.61"), Money::parse("4895829.16"), {}},
                                       {2022, Money::parse("1374971.50"), Money::parse("841152.51"), {}}};
  const char* expected[] = {"33816.89", "260479.37", "200534.18", "38988.55", "-533818.99"};
  const auto r = conservation_from_rows(table, Money());
  for (std::size_t i = 0; i < 5; ++i)
    if (r.per_year[i].deviation != Money::parse(expected[i])) ++failures;
  if (r.total_budget.str() != "21311945.11" || r.total_cost.str() != "21311945.11" || r.total_deviation != Money())
    ++failures;
  return {failures == 0, "20 synth datasets + Table 1 rows, total deviation " + r.total_deviation.str() + ", " +
                             std::to_string(failures) + " failures"};
}

// 6. Schedule-aware plans group projects more tightly than the scattered
// initial schedule.
Outcome grouping_improvement() {
  std::size_t failures = 0;
  double worst_ratio = 0.0;
  for (auto [n, blobs] : {std::pair<std::size_t, std::size_t>{800, 5}, {1000, 6}}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      SynthParams params;
      params.n = n;
      params.blobs = blobs;
      params.seed = seed * 7919 + n;
      params.growth_rate = 0.03;
      params.tolerance_fraction = 0.05;
      const auto d = synthesize_dataset(params);
      const auto before = initial_schedule_plan(d.segments, d.schedule);
      const auto after = schedule_aware_plan(d.segments, d.schedule);
      const auto cmp = compare_plans(before, after, d.schedule, d.segments);
      if (!(cmp.dispersion_after < cmp.dispersion_before)) ++failures;
      worst_ratio = std::max(worst_ratio, cmp.dispersion_after / cmp.dispersion_before);
    }
  }
  std::ostringstream detail;
  detail << "100 runs (50 Milton-scale, 50 Tyler-scale), worst after/before dispersion " << worst_ratio << ", "
         << failures << " failures";
  return {failures == 0, detail.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

// 7. synth + cluster --algo schedule on 1800 segments: fast and byte-identical.
Outcome determinism_and_scale() {
  const fs::path dir = fs::temp_directory_path() / ("pavesched_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = PAVESCHED_CLI;
  double worst = 0.0;
  bool ok = true;
  std::string plans[2];
  for (int i = 0; i < 2; ++i) {
    const auto tag = std::to_string(i);
    const auto start = std::chrono::steady_clock::now();
    const auto seg = (dir / ("s" + tag + ".csv")).string(), bud = (dir / ("b" + tag + ".csv")).string(),
               cost = (dir / ("c" + tag + ".csv")).string(), plan = (dir / ("p" + tag + ".json")).string();
    ok = ok && run(cli + " synth --n 1800 --blobs 8 --growth-rate 0.03 --tolerance-fraction 0.05 --seed 1800" +
                   " --out-segments " + seg + " --out-budgets " + bud + " --out-costs " + cost) == 0;
    ok = ok && run(cli + " cluster --algo schedule --segments " + seg + " --budgets " + bud + " --costs " + cost +
                   " --out " + plan + " 2> /dev/null") == 0;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    worst = std::max(worst, secs);
    plans[i] = slurp(plan);
  }
  fs::remove_all(dir);
  const bool identical = !plans[0].empty() && plans[0] == plans[1];
  std::ostringstream detail;
  detail << "1800 segments, slowest run " << worst << " s, outputs " << (identical ? "identical" : "differ");
  return {ok && identical && worst < 5.0, detail.str()};
}

// 8. With room for one of two band candidates, the earlier scheduled year wins.
Outcome year_priority() {
  std::mt19937_64 gen(8008);
  std::size_t cases = 0, wins = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // Center plus a ring of near points forms C_low; two candidates sit
    // farther out, the later-year one always nearer to the center.
    const Year cluster_year = 2020;
    const std::vector<Year> years{2016, 2017, 2018, 2019, 2020, 2021, 2022, 2023, 2024};
    std::vector<Segment> pool;
    pool.push_back(seg("c", {0, 0}, cents(std::uniform_int_distribution<int>(1, 5000)(gen)), cluster_year, years));
    const int near = std::uniform_int_distribution<int>(0, 6)(gen);
    Money low_total = pool[0].scheduled_cost();
    for (int k = 0; k < near; ++k) {
      const double angle = 0.9 * k;
      const double r = 1.0 + 0.1 * k;
      pool.push_back(seg("n" + std::to_string(k), {r * std::cos(angle), r * std::sin(angle)},
                         cents(std::uniform_int_distribution<int>(1, 5000)(gen)), cluster_year, years));
      low_total += pool.back().scheduled_cost();
    }
    const Year early = years[std::uniform_int_distribution<std::size_t>(0, 7)(gen)];
    const Year late = std::uniform_int_distribution<Year>(early + 1, 2024)(gen);
    const Money cost_early = cents(std::uniform_int_distribution<int>(100, 5000)(gen));
    const Money cost_late = cents(std::uniform_int_distribution<int>(100, 5000)(gen));
    const double d_late = std::uniform_real_distribution<double>(3.0, 10.0)(gen);
    const double d_early = d_late + std::uniform_real_distribution<double>(0.5, 10.0)(gen);
    const double th = std::uniform_real_distribution<double>(0.0, 6.28)(gen);
    pool.push_back(seg("late", {d_late * std::cos(th), d_late * std::sin(th)}, cost_late, late, years));
    pool.push_back(seg("early", {-d_early * std::cos(th), -d_early * std::sin(th)}, cost_early, early, years));
    if (trial % 2) std::swap(pool[pool.size() - 1], pool[pool.size() - 2]);

    // Headroom fits either candidate alone but not both.
    const Money bigger = std::max(cost_early, cost_late);
    const Money both = cost_early + cost_late;
    const Money headroom = cents(std::uniform_int_distribution<std::int64_t>(bigger.cents(), both.cents() - 1)(gen));
    const Money p = low_total + headroom;
    const Money e_low = headroom;
    const Money e_high = both;

    const RadialOptions options{AdmissionMode::prefix, CostBasis::cluster_year, cluster_year};
    const auto band = build_tolerance_band(pool, pool[0], p, e_low, e_high, options);
    const auto band_set = ids(band.band_ids);
    if (!band_set.contains("early") || !band_set.contains("late")) continue;  // not a two-candidate case
    ++cases;
    const auto final_ids = ids(schedule_aware_cluster(pool, pool[0], p, e_low, e_high, options).cluster.member_ids);
    if (final_ids.contains("early") && !final_ids.contains("late")) ++wins;
  }
  const bool pass = cases >= 900 && wins == cases;
  return {pass, std::to_string(wins) + "/" + std::to_string(cases) + " constructed cases admit the earlier year"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 budget feasibility", budget_feasibility}, {"2 nesting", nesting},
      {"3 oracle equivalence", oracle_equivalence}, {"4 reduction identity", reduction_identity},
      {"5 conservation accounting", conservation},  {"6 grouping improvement", grouping_improvement},
      {"7 determinism and scale", determinism_and_scale}, {"8 year priority", year_priority},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
