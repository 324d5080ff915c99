// pavesched: re-schedule geo-located maintenance projects into compact
// per-year clusters under per-year budgets.
//
// Exit status: 0 success, 1 validation failure, 2 usage / I/O / parse error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pavesched/cost_model.hpp"
#include "pavesched/errors.hpp"
#include "pavesched/io_formats.hpp"
#include "pavesched/metrics.hpp"
#include "pavesched/radial_clustering.hpp"
#include "pavesched/schedule_refinement.hpp"
#include "pavesched/synth.hpp"

namespace fs = std::filesystem;
using namespace pavesched;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

struct ValidationFailure : Error {
  using Error::Error;
};

enum class LogLevel { error, warn, info, debug };

LogLevel log_level() {
  const char* env = std::getenv("PAVESCHED_LOG");
  const std::string v = env ? env : "";
  if (v == "error") return LogLevel::error;
  if (v == "info") return LogLevel::info;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::warn;
}

void log(LogLevel level, const std::string& msg) {
  static const LogLevel threshold = log_level();
  if (level > threshold) return;
  static constexpr const char* kNames[] = {"error", "warning", "info", "debug"};
  std::cerr << "pavesched: " << kNames[static_cast<int>(level)] << ": " << msg << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Collects outputs and writes them only once everything has succeeded.
class OutputSet {
 public:
  void add(std::string path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

  void commit() {
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
      for (const auto& [path, content] : files_) {
        fs::path target(path);
        fs::path tmp = target;
        tmp += ".tmp";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) throw Error("cannot write '" + path + "'");
        staged.emplace_back(tmp, target);
      }
    } catch (...) {
      for (const auto& [tmp, target] : staged) fs::remove(tmp);
      throw;
    }
    for (const auto& [tmp, target] : staged) fs::rename(tmp, target);
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

// ---- shared dataset loading ------------------------------------------------

struct DatasetArgs {
  std::string segments_path;
  std::string budgets_path;
  std::string costs_path;
  std::string conservation_tolerance = "0.00";
  bool strict = false;
};

struct Dataset {
  std::vector<Segment> segments;
  BudgetSchedule schedule;
  std::string digest;
};

void add_dataset_options(CLI::App& cmd, DatasetArgs& args) {
  cmd.add_option("--segments", args.segments_path, "Segments CSV")->required();
  cmd.add_option("--budgets", args.budgets_path, "Budgets CSV (year,budget[,e_l,e_h])")->required();
  cmd.add_option("--costs", args.costs_path, "Cost matrix CSV (id,Y<year>,...)");
  cmd.add_option("--conservation-tolerance", args.conservation_tolerance,
                 "Allowed |total cost - total budget| before flagging a mismatch");
  cmd.add_flag("--strict", args.strict, "Treat a conservation mismatch as a validation failure");
}

Dataset load_dataset(const DatasetArgs& args) {
  const std::string segments_text = read_file(args.segments_path);
  const std::string budgets_text = read_file(args.budgets_path);
  const std::string costs_text = args.costs_path.empty() ? std::string() : read_file(args.costs_path);

  Dataset d;
  d.schedule = load_budgets(budgets_text, Money::parse(args.conservation_tolerance));
  const auto years = d.schedule.years();
  d.segments = load_segments(segments_text, years);
  if (!args.costs_path.empty()) apply_cost_matrix(d.segments, load_cost_matrix(costs_text));

  const std::vector<std::string_view> inputs{segments_text, budgets_text, costs_text};
  d.digest = digest_inputs(inputs);
  log(LogLevel::info, "loaded " + std::to_string(d.segments.size()) + " segments over " +
                          std::to_string(d.schedule.size()) + " years");
  return d;
}

void print_report(const ValidationReport& report) {
  for (const auto& issue : report.issues)
    std::cerr << "pavesched: " << (issue.severity == Severity::error ? "error" : "warning") << ": ["
              << to_string(issue.kind) << "] " << issue.message << '\n';
}

// ---- subcommands -----------------------------------------------------------

int run_validate(const DatasetArgs& args) {
  const auto d = load_dataset(args);
  const auto report = validate_dataset(d.segments, d.schedule);
  print_report(report);
  if (report.has_errors(args.strict)) return kExitValidation;
  std::cout << (report.empty() ? "ok" : "ok with warnings") << '\n';
  return kExitOk;
}

struct ClusterArgs {
  DatasetArgs data;
  std::string algo;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> axis;
  std::optional<std::string> e_low;
  std::optional<std::string> e_high;
  bool skip_mode = false;
  std::string out;
  std::string svg;
  std::string metrics_out;
};

int run_cluster(const ClusterArgs& args) {
  if (args.algo == "random" && !args.seed) throw UsageError("--algo random requires --seed");
  if (args.algo != "random" && args.seed) throw UsageError("--seed only applies to --algo random");
  if (args.algo == "random" && args.axis) throw UsageError("--axis does not apply to --algo random");
  if (args.algo != "schedule" && (args.e_low || args.e_high))
    throw UsageError("--e-low/--e-high only apply to --algo schedule");

  auto d = load_dataset(args.data);

  // Per-year tolerances from the budgets file win over the global pair.
  const Money e_low = args.e_low ? Money::parse(*args.e_low) : Money();
  const Money e_high = args.e_high ? Money::parse(*args.e_high) : Money();
  for (auto& entry : d.schedule.entries) {
    if (entry.low_tolerance == Money() && entry.high_tolerance == Money()) {
      entry.low_tolerance = e_low;
      entry.high_tolerance = e_high;
    }
  }

  const auto report = validate_dataset(d.segments, d.schedule);
  print_report(report);
  if (report.has_errors(args.data.strict)) throw ValidationFailure("dataset failed validation");

  const AdmissionMode mode = args.skip_mode ? AdmissionMode::skip : AdmissionMode::prefix;
  const std::size_t axis = args.axis.value_or(0);
  Plan plan;
  if (args.algo == "random") {
    plan = main_algorithm(d.segments, d.schedule, *args.seed, mode);
  } else if (args.algo == "landmark") {
    plan = landmark_based_radial_clustering(d.segments, d.schedule, axis, mode);
  } else {
    plan = schedule_aware_plan(d.segments, d.schedule, {axis, mode, args.data.strict});
  }

  for (const auto& diag : plan.diagnostics) log(LogLevel::warn, diag.message);

  // Already printed with the validation report.
  if (const auto* mismatch = report.find(IssueKind::conservation_mismatch))
    plan.diagnostics.push_back(
        {DiagnosticKind::conservation_mismatch, std::nullopt, {}, mismatch->amount, mismatch->message});

  const auto metrics = compute_metrics(plan, d.schedule, d.segments);
  const auto doc = make_plan_document(plan, metrics, d.schedule, d.segments, args.algo, d.digest);

  OutputSet outputs;
  outputs.add(args.out, emit_plan(doc));
  if (!args.svg.empty()) outputs.add(args.svg, render_plan_svg(plan, d.segments));
  if (!args.metrics_out.empty()) outputs.add(args.metrics_out, emit_metrics(metrics));
  outputs.commit();
  log(LogLevel::info, "wrote " + args.out);
  return kExitOk;
}

int run_metrics(const std::string& plan_path, const std::string& out) {
  const auto doc = parse_plan(read_file(plan_path));
  const auto plan = plan_from_document(doc);
  const auto segments = segments_from_document(doc);
  const std::string text = emit_metrics(compute_metrics(plan, doc.schedule, segments));
  if (out.empty()) {
    std::cout << text;
  } else {
    OutputSet outputs;
    outputs.add(out, text);
    outputs.commit();
  }
  return kExitOk;
}

int run_compare(const DatasetArgs& data, const std::string& before_path, const std::string& after_path,
                const std::string& out) {
  const auto d = load_dataset(data);
  const Plan after = plan_from_document(parse_plan(read_file(after_path)));
  const Plan before = before_path.empty() ? initial_schedule_plan(d.segments, d.schedule)
                                          : plan_from_document(parse_plan(read_file(before_path)));
  const std::string text = emit_comparison(compare_plans(before, after, d.schedule, d.segments));
  if (out.empty()) {
    std::cout << text;
  } else {
    OutputSet outputs;
    outputs.add(out, text);
    outputs.commit();
  }
  return kExitOk;
}

int run_render(const std::string& plan_path, const std::string& out) {
  const auto doc = parse_plan(read_file(plan_path));
  OutputSet outputs;
  outputs.add(out, render_plan_svg(plan_from_document(doc), segments_from_document(doc)));
  outputs.commit();
  return kExitOk;
}

struct SynthArgs {
  SynthParams params;
  std::vector<std::string> budgets;
  std::string out_segments;
  std::string out_budgets;
  std::string out_costs;
};

int run_synth(SynthArgs args) {
  for (const auto& b : args.budgets) args.params.budgets.push_back(Money::parse(b));
  const auto data = synthesize_dataset(args.params);

  const bool flat = args.params.growth_rate == 0.0;
  OutputSet outputs;
  outputs.add(args.out_segments, emit_segments(data.segments, flat ? CostColumns::scalar : CostColumns::per_year,
                                               args.params.years));
  outputs.add(args.out_budgets, emit_budgets(data.schedule));
  if (!args.out_costs.empty()) outputs.add(args.out_costs, emit_cost_matrix(data.matrix));
  outputs.commit();
  log(LogLevel::info, "synthesized " + std::to_string(data.segments.size()) + " segments");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-capped spatial re-scheduling of maintenance projects"};
  app.require_subcommand(1);

  DatasetArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a dataset against its budget schedule");
  add_dataset_options(*validate, validate_args);

  ClusterArgs cluster_args;
  auto* cluster = app.add_subcommand("cluster", "Build a per-year clustered plan");
  add_dataset_options(*cluster, cluster_args.data);
  cluster->add_option("--algo", cluster_args.algo, "random | landmark | schedule")
      ->required()
      ->check(CLI::IsMember({"random", "landmark", "schedule"}));
  cluster->add_option("--seed", cluster_args.seed, "Seed for --algo random");
  cluster->add_option("--axis", cluster_args.axis, "Coordinate index for the initial center (default 0)");
  cluster->add_option("--e-low", cluster_args.e_low, "Global low tolerance e_l (money)");
  cluster->add_option("--e-high", cluster_args.e_high, "Global high tolerance e_h (money)");
  cluster->add_flag("--skip-mode", cluster_args.skip_mode, "Skip non-fitting neighbors instead of stopping");
  cluster->add_option("--out", cluster_args.out, "Plan JSON output path")->required();
  cluster->add_option("--svg", cluster_args.svg, "Optional SVG map output path");
  cluster->add_option("--metrics", cluster_args.metrics_out, "Optional metrics JSON output path");

  std::string metrics_plan, metrics_out;
  auto* metrics = app.add_subcommand("metrics", "Recompute metrics for a plan document");
  metrics->add_option("--plan", metrics_plan, "Plan JSON")->required();
  metrics->add_option("--out", metrics_out, "Output path (default: stdout)");

  DatasetArgs compare_data;
  std::string before_path, after_path, compare_out;
  auto* compare = app.add_subcommand("compare", "Compare two plans (before defaults to the initial schedule)");
  add_dataset_options(*compare, compare_data);
  compare->add_option("--before", before_path, "Plan JSON for the 'before' side");
  compare->add_option("--after", after_path, "Plan JSON for the 'after' side")->required();
  compare->add_option("--out", compare_out, "Output path (default: stdout)");

  std::string render_plan, render_out;
  auto* render = app.add_subcommand("render", "Render a plan document as an SVG map");
  render->add_option("--plan", render_plan, "Plan JSON")->required();
  render->add_option("--out", render_out, "SVG output path")->required();

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--n", synth_args.params.n, "Number of segments");
  synth->add_option("--blobs", synth_args.params.blobs, "Number of spatial blobs");
  synth->add_option("--spread", synth_args.params.spread, "Blob standard deviation (map units)");
  synth->add_option("--extent", synth_args.params.extent, "Side of the square holding blob centers");
  synth->add_option("--years", synth_args.params.years, "Fiscal years")->delimiter(',');
  synth->add_option("--budgets", synth_args.budgets, "Budget per year (default: auto-sized)")->delimiter(',');
  synth->add_option("--tolerance-fraction", synth_args.params.tolerance_fraction,
                    "Per-year e_l = e_h = fraction * budget");
  synth->add_option("--growth-rate", synth_args.params.growth_rate, "Yearly cost growth");
  synth->add_option("--seed", synth_args.params.seed, "Random seed");
  synth->add_option("--out-segments", synth_args.out_segments, "Segments CSV output")->required();
  synth->add_option("--out-budgets", synth_args.out_budgets, "Budgets CSV output")->required();
  synth->add_option("--out-costs", synth_args.out_costs, "Optional cost matrix CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return run_validate(validate_args);
    if (*cluster) return run_cluster(cluster_args);
    if (*metrics) return run_metrics(metrics_plan, metrics_out);
    if (*compare) return run_compare(compare_data, before_path, after_path, compare_out);
    if (*render) return run_render(render_plan, render_out);
    if (*synth) return run_synth(synth_args);
  } catch (const ValidationFailure& e) {
    log(LogLevel::error, e.what());
    return kExitValidation;
  } catch (const ValidationError& e) {
    print_report(e.report());
    log(LogLevel::error, "dataset failed validation");
    return kExitValidation;
  } catch (const UsageError& e) {
    log(LogLevel::error, e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    log(LogLevel::error, e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
