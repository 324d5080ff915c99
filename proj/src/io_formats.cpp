#include "pavesched/io_formats.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "pavesched/csv.hpp"
#include "pavesched/errors.hpp"

namespace pavesched {

using Json = nlohmann::ordered_json;

namespace {

template <class Fn>
auto at_cell(std::size_t line, const std::string& column, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    if (e.row() != 0) throw;
    throw ParseError(e.what(), line, column);
  }
}

std::vector<csv::Row> rows_with_header(std::string_view text, std::string_view what) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw ParseError(std::string(what) + " input is empty");
  return rows;
}

void check_width(const csv::Row& row, std::size_t width) {
  if (row.fields.size() != width)
    throw ParseError("expected " + std::to_string(width) + " fields, found " + std::to_string(row.fields.size()),
                     row.line);
}

std::optional<Year> year_column(std::string_view name) {
  if (name.size() < 2 || name.front() != 'Y') return std::nullopt;
  try {
    return csv::parse_int(name.substr(1));
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

}  // namespace

// ---- CSV -------------------------------------------------------------------

std::vector<Segment> load_segments(std::string_view csv_text, std::span<const Year> horizon) {
  const auto rows = rows_with_header(csv_text, "segment");
  const auto& header = rows.front().fields;
  if (header.empty() || header[0] != "id") throw ParseError("first column must be 'id'", 1, header.empty() ? "" : header[0]);

  const auto sched_it = std::find(header.begin(), header.end(), "scheduled_year");
  if (sched_it == header.end()) throw ParseError("missing column", 1, "scheduled_year");
  const auto sched_col = static_cast<std::size_t>(sched_it - header.begin());
  if (sched_col < 2) throw ParseError("no coordinate columns between 'id' and 'scheduled_year'", 1);

  bool scalar_cost = false;
  std::vector<std::pair<std::size_t, Year>> year_cols;
  for (std::size_t c = sched_col + 1; c < header.size(); ++c) {
    if (header[c] == "cost" && !scalar_cost && year_cols.empty()) {
      scalar_cost = true;
    } else if (const auto y = year_column(header[c]); y && !scalar_cost) {
      year_cols.emplace_back(c, *y);
    } else {
      throw ParseError("unexpected column", 1, header[c]);
    }
  }

  std::vector<Segment> out;
  out.reserve(rows.size() - 1);
  std::unordered_set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    check_width(row, header.size());

    Segment s;
    s.id = row.fields[0];
    if (s.id.empty()) throw ParseError("empty id", row.line, "id");
    if (!ids.insert(s.id).second) throw ParseError("duplicate id '" + s.id + "'", row.line, "id");

    for (std::size_t c = 1; c < sched_col; ++c)
      s.coords.push_back(at_cell(row.line, header[c], [&] { return csv::parse_double(row.fields[c]); }));
    s.scheduled_year =
        at_cell(row.line, "scheduled_year", [&] { return csv::parse_int(row.fields[sched_col]); });

    if (scalar_cost) {
      const Money cost = at_cell(row.line, "cost", [&] { return Money::parse(row.fields[sched_col + 1]); });
      s.cost_by_year.emplace(s.scheduled_year, cost);
      for (Year y : horizon) s.cost_by_year.emplace(y, cost);
    }
    for (const auto& [c, year] : year_cols)
      s.cost_by_year.emplace(year, at_cell(row.line, header[c], [&] { return Money::parse(row.fields[c]); }));
    out.push_back(std::move(s));
  }
  return out;
}

BudgetSchedule load_budgets(std::string_view csv_text, Money conservation_tolerance) {
  const auto rows = rows_with_header(csv_text, "budget");
  const auto& header = rows.front().fields;
  const bool with_tolerances = header.size() == 4;
  if (!(header.size() == 2 || with_tolerances) || header[0] != "year" || header[1] != "budget" ||
      (with_tolerances && (header[2] != "e_l" || header[3] != "e_h")))
    throw ParseError("budget header must be 'year,budget' or 'year,budget,e_l,e_h'", 1);

  BudgetSchedule schedule;
  schedule.conservation_tolerance = conservation_tolerance;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    check_width(row, header.size());
    BudgetEntry e;
    e.year = at_cell(row.line, "year", [&] { return csv::parse_int(row.fields[0]); });
    e.budget = at_cell(row.line, "budget", [&] { return Money::parse(row.fields[1]); });
    if (with_tolerances) {
      e.low_tolerance = at_cell(row.line, "e_l", [&] { return Money::parse(row.fields[2]); });
      e.high_tolerance = at_cell(row.line, "e_h", [&] { return Money::parse(row.fields[3]); });
    }
    schedule.entries.push_back(e);
  }
  return schedule;
}

CostScenarioMatrix load_cost_matrix(std::string_view csv_text) {
  const auto rows = rows_with_header(csv_text, "cost matrix");
  const auto& header = rows.front().fields;
  if (header.empty() || header[0] != "id") throw ParseError("first column must be 'id'", 1);

  CostScenarioMatrix matrix;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto y = year_column(header[c]);
    if (!y) throw ParseError("expected a Y<year> column", 1, header[c]);
    if (!matrix.years.empty() && *y <= matrix.years.back())
      throw ParseError("year columns must be strictly increasing", 1, header[c]);
    matrix.years.push_back(*y);
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    check_width(row, header.size());
    std::vector<Money> costs;
    for (std::size_t c = 1; c < header.size(); ++c) {
      const Money m = at_cell(row.line, header[c], [&] { return Money::parse(row.fields[c]); });
      if (m <= Money()) throw ParseError("cost must be positive", row.line, header[c]);
      costs.push_back(m);
    }
    if (!matrix.per_segment.emplace(row.fields[0], std::move(costs)).second)
      throw ParseError("duplicate id '" + row.fields[0] + "'", row.line, "id");
  }
  return matrix;
}

std::string emit_segments(std::span<const Segment> segments, CostColumns form, std::span<const Year> years) {
  const std::size_t dim = segments.empty() ? 2 : segments.front().coords.size();
  static constexpr std::array<const char*, 3> kNames{"x", "y", "z"};

  std::string out = "id";
  for (std::size_t k = 0; k < dim; ++k) out += ',' + (k < kNames.size() ? std::string(kNames[k]) : "c" + std::to_string(k));
  out += ",scheduled_year";
  if (form == CostColumns::scalar)
    out += ",cost";
  else
    for (Year y : years) out += ",Y" + std::to_string(y);
  out += '\n';

  for (const auto& s : segments) {
    out += csv::escape(s.id);
    for (double c : s.coords) out += ',' + csv::format_double(c);
    out += ',' + std::to_string(s.scheduled_year);
    if (form == CostColumns::scalar)
      out += ',' + s.scheduled_cost().str();
    else
      for (Year y : years) out += ',' + s.cost_at(y).str();
    out += '\n';
  }
  return out;
}

std::string emit_budgets(const BudgetSchedule& schedule) {
  std::string out = "year,budget,e_l,e_h\n";
  for (const auto& e : schedule.entries)
    out += std::to_string(e.year) + ',' + e.budget.str() + ',' + e.low_tolerance.str() + ',' +
           e.high_tolerance.str() + '\n';
  return out;
}

std::string emit_cost_matrix(const CostScenarioMatrix& matrix) {
  std::string out = "id";
  for (Year y : matrix.years) out += ",Y" + std::to_string(y);
  out += '\n';
  for (const auto& [id, row] : matrix.per_segment) {
    out += csv::escape(id);
    for (Money m : row) out += ',' + m.str();
    out += '\n';
  }
  return out;
}

std::string digest_inputs(std::span<const std::string_view> inputs) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  for (auto part : inputs) {
    std::array<unsigned char, 8> len{};
    auto n = static_cast<std::uint64_t>(part.size());
    for (auto& b : len) {
      b = static_cast<unsigned char>(n & 0xff);
      n >>= 8;
    }
    EVP_DigestUpdate(ctx.get(), len.data(), len.size());
    EVP_DigestUpdate(ctx.get(), part.data(), part.size());
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int md_len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &md_len);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < md_len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

// ---- plan documents --------------------------------------------------------

PlanDocument make_plan_document(const Plan& plan, const PlanMetrics& metrics, const BudgetSchedule& schedule,
                                std::span<const Segment> segments, std::string algorithm, std::string input_digest) {
  const SegmentIndex index(segments);
  PlanDocument doc;
  doc.algorithm = std::move(algorithm);
  doc.input_digest = std::move(input_digest);
  doc.cost_basis = plan.cost_basis;
  doc.schedule = schedule;
  doc.metrics = metrics;
  doc.diagnostics = plan.diagnostics;

  const bool traced = plan.traces.size() == plan.clusters.size();
  for (std::size_t i = 0; i < plan.clusters.size(); ++i) {
    const auto& c = plan.clusters[i];
    ClusterRecord rec{c.year, c.budget, c.center_id, c.realized_cost, std::nullopt, {}};
    if (traced && !c.empty()) rec.stop_reason = plan.traces[i].stop_reason;
    for (const auto& id : c.member_ids) {
      const Segment& s = index.at(id);
      rec.members.push_back({s.id, s.coords, s.scheduled_year, c.year, charged_cost(s, c.year, plan.cost_basis)});
    }
    doc.clusters.push_back(std::move(rec));
  }
  for (const auto& id : plan.unassigned_ids) {
    const Segment& s = index.at(id);
    doc.unassigned.push_back({s.id, s.coords, s.scheduled_year, std::nullopt, s.scheduled_cost()});
  }
  return doc;
}

namespace {

Json money(Money m) { return m.str(); }

template <class T>
Json nullable(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json member_json(const MemberRecord& m) {
  Json j;
  j["id"] = m.id;
  j["coords"] = m.coords;
  j["scheduled_year"] = m.scheduled_year;
  j["assigned_year"] = nullable(m.assigned_year);
  j["cost_used"] = money(m.cost_used);
  return j;
}

Json metrics_json(const PlanMetrics& m) {
  Json per_year = Json::array();
  for (const auto& y : m.per_year) {
    Json j;
    j["year"] = y.year;
    j["budget"] = money(y.budget);
    j["realized_cost"] = money(y.realized_cost);
    j["utilization"] = y.utilization;
    j["over_budget"] = y.over_budget;
    j["member_count"] = y.member_count;
    j["mean_member_distance_to_center"] = y.mean_member_distance_to_center;
    j["mean_pairwise_distance"] = y.mean_pairwise_distance;
    per_year.push_back(std::move(j));
  }
  Json overall;
  overall["total_budget"] = money(m.overall.total_budget);
  overall["total_cost"] = money(m.overall.total_cost);
  overall["total_deviation"] = money(m.overall.total_deviation);
  overall["weighted_mean_dispersion"] = m.overall.weighted_mean_dispersion;
  overall["weighted_mean_center_distance"] = m.overall.weighted_mean_center_distance;

  Json j;
  j["per_year"] = std::move(per_year);
  j["overall"] = std::move(overall);
  j["unassigned_count"] = m.unassigned_count;
  return j;
}

// -- parsing helpers --

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("plan document: missing key '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("plan document: bad value for '") + key + "': " + e.what());
  }
}

Money get_money(const Json& j, const char* key) { return Money::parse(get<std::string>(j, key)); }

template <class T>
std::optional<T> get_optional(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return get<T>(j, key);
}

MemberRecord parse_member(const Json& j) {
  return {get<std::string>(j, "id"), get<Coords>(j, "coords"), get<Year>(j, "scheduled_year"),
          get_optional<Year>(j, "assigned_year"), get_money(j, "cost_used")};
}

PlanMetrics parse_metrics(const Json& j) {
  PlanMetrics m;
  for (const auto& y : field(j, "per_year")) {
    YearMetrics ym;
    ym.year = get<Year>(y, "year");
    ym.budget = get_money(y, "budget");
    ym.realized_cost = get_money(y, "realized_cost");
    ym.utilization = get<double>(y, "utilization");
    ym.over_budget = get<bool>(y, "over_budget");
    ym.member_count = get<std::size_t>(y, "member_count");
    ym.mean_member_distance_to_center = get<double>(y, "mean_member_distance_to_center");
    ym.mean_pairwise_distance = get<double>(y, "mean_pairwise_distance");
    m.per_year.push_back(ym);
  }
  const Json& o = field(j, "overall");
  m.overall.total_budget = get_money(o, "total_budget");
  m.overall.total_cost = get_money(o, "total_cost");
  m.overall.total_deviation = get_money(o, "total_deviation");
  m.overall.weighted_mean_dispersion = get<double>(o, "weighted_mean_dispersion");
  m.overall.weighted_mean_center_distance = get<double>(o, "weighted_mean_center_distance");
  m.unassigned_count = get<std::size_t>(j, "unassigned_count");
  return m;
}

}  // namespace

std::string emit_plan(const PlanDocument& doc) {
  Json j;
  j["format_version"] = doc.format_version;
  j["algorithm"] = doc.algorithm;
  j["input_digest"] = doc.input_digest;
  j["cost_basis"] = std::string(to_string(doc.cost_basis));

  Json entries = Json::array();
  for (const auto& e : doc.schedule.entries) {
    Json je;
    je["year"] = e.year;
    je["budget"] = money(e.budget);
    je["e_l"] = money(e.low_tolerance);
    je["e_h"] = money(e.high_tolerance);
    entries.push_back(std::move(je));
  }
  j["schedule"]["conservation_tolerance"] = money(doc.schedule.conservation_tolerance);
  j["schedule"]["entries"] = std::move(entries);

  Json clusters = Json::array();
  for (const auto& c : doc.clusters) {
    Json jc;
    jc["year"] = c.year;
    jc["budget"] = money(c.budget);
    jc["center_id"] = nullable(c.center_id);
    jc["realized_cost"] = money(c.realized_cost);
    jc["stop_reason"] = c.stop_reason ? Json(std::string(to_string(*c.stop_reason))) : Json(nullptr);
    jc["members"] = Json::array();
    for (const auto& m : c.members) jc["members"].push_back(member_json(m));
    clusters.push_back(std::move(jc));
  }
  j["clusters"] = std::move(clusters);

  j["unassigned"] = Json::array();
  for (const auto& m : doc.unassigned) j["unassigned"].push_back(member_json(m));

  j["metrics"] = metrics_json(doc.metrics);

  j["diagnostics"] = Json::array();
  for (const auto& d : doc.diagnostics) {
    Json jd;
    jd["kind"] = std::string(to_string(d.kind));
    jd["year"] = nullable(d.year);
    jd["segment_ids"] = d.segment_ids;
    jd["amount"] = d.amount ? Json(d.amount->str()) : Json(nullptr);
    jd["message"] = d.message;
    j["diagnostics"].push_back(std::move(jd));
  }
  return j.dump(2) + "\n";
}

std::string emit_metrics(const PlanMetrics& metrics) { return metrics_json(metrics).dump(2) + "\n"; }

std::string emit_comparison(const PlanComparison& cmp) {
  Json j;
  j["dispersion_before"] = cmp.dispersion_before;
  j["dispersion_after"] = cmp.dispersion_after;
  j["dispersion_delta"] = cmp.dispersion_delta;
  j["center_distance_delta"] = cmp.center_distance_delta;
  j["moved"] = cmp.moved;
  j["newly_unassigned"] = cmp.newly_unassigned;
  j["newly_assigned"] = cmp.newly_assigned;
  j["year_shift_histogram"] = Json::object();
  for (const auto& [shift, count] : cmp.year_shift_histogram) j["year_shift_histogram"][std::to_string(shift)] = count;
  j["per_year"] = Json::array();
  for (const auto& d : cmp.per_year) {
    Json jd;
    jd["year"] = d.year;
    jd["center_distance_before"] = d.center_distance_before;
    jd["center_distance_after"] = d.center_distance_after;
    jd["pairwise_before"] = d.pairwise_before;
    jd["pairwise_after"] = d.pairwise_after;
    jd["pairwise_delta"] = d.pairwise_delta;
    j["per_year"].push_back(std::move(jd));
  }
  return j.dump(2) + "\n";
}

PlanDocument parse_plan(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("plan document is not valid JSON: ") + e.what());
  }

  PlanDocument doc;
  doc.format_version = get<std::string>(j, "format_version");
  if (doc.format_version != kPlanFormatVersion)
    throw ParseError("unsupported plan format_version '" + doc.format_version + "'");
  doc.algorithm = get<std::string>(j, "algorithm");
  doc.input_digest = get<std::string>(j, "input_digest");
  doc.cost_basis = parse_cost_basis(get<std::string>(j, "cost_basis"));

  const Json& sched = field(j, "schedule");
  doc.schedule.conservation_tolerance = get_money(sched, "conservation_tolerance");
  for (const auto& e : field(sched, "entries"))
    doc.schedule.entries.push_back(
        {get<Year>(e, "year"), get_money(e, "budget"), get_money(e, "e_l"), get_money(e, "e_h")});

  for (const auto& c : field(j, "clusters")) {
    ClusterRecord rec;
    rec.year = get<Year>(c, "year");
    rec.budget = get_money(c, "budget");
    rec.center_id = get_optional<std::string>(c, "center_id");
    rec.realized_cost = get_money(c, "realized_cost");
    if (auto reason = get_optional<std::string>(c, "stop_reason")) rec.stop_reason = parse_stop_reason(*reason);
    for (const auto& m : field(c, "members")) rec.members.push_back(parse_member(m));
    doc.clusters.push_back(std::move(rec));
  }
  for (const auto& m : field(j, "unassigned")) doc.unassigned.push_back(parse_member(m));
  doc.metrics = parse_metrics(field(j, "metrics"));
  for (const auto& d : field(j, "diagnostics")) {
    Diagnostic diag;
    diag.kind = parse_diagnostic_kind(get<std::string>(d, "kind"));
    diag.year = get_optional<Year>(d, "year");
    diag.segment_ids = get<std::vector<std::string>>(d, "segment_ids");
    if (auto amount = get_optional<std::string>(d, "amount")) diag.amount = Money::parse(*amount);
    diag.message = get<std::string>(d, "message");
    doc.diagnostics.push_back(std::move(diag));
  }
  return doc;
}

Plan plan_from_document(const PlanDocument& doc) {
  Plan plan;
  plan.cost_basis = doc.cost_basis;
  plan.diagnostics = doc.diagnostics;
  const bool traced = std::all_of(doc.clusters.begin(), doc.clusters.end(),
                                  [](const ClusterRecord& c) { return c.stop_reason || c.members.empty(); });
  for (const auto& c : doc.clusters) {
    Cluster cluster{c.year, c.center_id, {}, c.realized_cost, c.budget};
    ClusterBuildTrace trace;
    Money running;
    for (const auto& m : c.members) {
      cluster.member_ids.push_back(m.id);
      running += m.cost_used;
      trace.admitted.push_back({m.id, running});
    }
    if (c.center_id) trace.center_id = *c.center_id;
    if (c.stop_reason) trace.stop_reason = *c.stop_reason;
    plan.clusters.push_back(std::move(cluster));
    if (traced) plan.traces.push_back(std::move(trace));
  }
  for (const auto& m : doc.unassigned) plan.unassigned_ids.push_back(m.id);
  return plan;
}

std::vector<Segment> segments_from_document(const PlanDocument& doc) {
  std::vector<Segment> out;
  auto add = [&](const MemberRecord& m) {
    Segment s{m.id, m.coords, {}, m.scheduled_year};
    const bool at_assigned = doc.cost_basis == CostBasis::cluster_year && m.assigned_year;
    s.cost_by_year.emplace(at_assigned ? *m.assigned_year : m.scheduled_year, m.cost_used);
    out.push_back(std::move(s));
  };
  for (const auto& c : doc.clusters)
    for (const auto& m : c.members) add(m);
  for (const auto& m : doc.unassigned) add(m);
  return out;
}

// ---- SVG -------------------------------------------------------------------

namespace {

constexpr std::array<const char*, 10> kPalette{"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                               "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
constexpr const char* kUnassigned = "#7f7f7f";

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_plan_svg(const Plan& plan, std::span<const Segment> segments) {
  for (const auto& s : segments)
    if (s.coords.size() != 2)
      throw InvalidArgument("SVG rendering needs planar (2-coordinate) data; segment '" + s.id + "' has " +
                            std::to_string(s.coords.size()));

  constexpr double kMapW = 800, kMapH = 600, kMargin = 40, kLegendW = 180;
  const double width = kMapW + 2 * kMargin + kLegendW;
  const double height = kMapH + 2 * kMargin;

  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (!segments.empty()) {
    min_x = max_x = segments.front().coords[0];
    min_y = max_y = segments.front().coords[1];
    for (const auto& s : segments) {
      min_x = std::min(min_x, s.coords[0]);
      max_x = std::max(max_x, s.coords[0]);
      min_y = std::min(min_y, s.coords[1]);
      max_y = std::max(max_y, s.coords[1]);
    }
  }
  const double span_x = max_x > min_x ? max_x - min_x : 1.0;
  const double span_y = max_y > min_y ? max_y - min_y : 1.0;
  const double scale = std::min(kMapW / span_x, kMapH / span_y);
  auto px = [&](double x) { return kMargin + (x - min_x) * scale; };
  auto py = [&](double y) { return kMargin + kMapH - (y - min_y) * scale; };

  std::map<std::string_view, const char*> color_of;
  for (std::size_t i = 0; i < plan.clusters.size(); ++i)
    for (const auto& id : plan.clusters[i].member_ids) color_of[id] = kPalette[i % kPalette.size()];

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(width) + "\" height=\"" + fixed2(height) +
         "\" viewBox=\"0 0 " + fixed2(width) + " " + fixed2(height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fixed2(width) + "\" height=\"" + fixed2(height) + "\" fill=\"#ffffff\"/>\n";
  // Draw order follows the plan (cluster members, then unassigned, then
  // anything the plan does not mention) so input order does not matter.
  const SegmentIndex index(segments);
  std::vector<const Segment*> order;
  std::set<std::string_view> drawn;
  auto enqueue = [&](const std::string& id) {
    if (index.contains(id) && drawn.insert(id).second) order.push_back(&index.at(id));
  };
  for (const auto& c : plan.clusters)
    for (const auto& id : c.member_ids) enqueue(id);
  for (const auto& id : plan.unassigned_ids) enqueue(id);
  for (const auto& s : segments) enqueue(s.id);

  out += "<g id=\"segments\">\n";
  for (const Segment* sp : order) {
    const Segment& s = *sp;
    const auto it = color_of.find(s.id);
    const char* color = it == color_of.end() ? kUnassigned : it->second;
    out += "<circle cx=\"" + fixed2(px(s.coords[0])) + "\" cy=\"" + fixed2(py(s.coords[1])) +
           "\" r=\"4.00\" fill=\"" + color + "\"><title>" + xml_escape(s.id) + "</title></circle>\n";
  }
  out += "</g>\n<g id=\"centers\">\n";
  for (std::size_t i = 0; i < plan.clusters.size(); ++i) {
    const auto& c = plan.clusters[i];
    if (!c.center_id || !index.contains(*c.center_id)) continue;
    const Segment& s = index.at(*c.center_id);
    out += "<circle cx=\"" + fixed2(px(s.coords[0])) + "\" cy=\"" + fixed2(py(s.coords[1])) +
           "\" r=\"9.00\" fill=\"none\" stroke=\"" + kPalette[i % kPalette.size()] + "\" stroke-width=\"2.00\"/>\n";
  }
  out += "</g>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"14\">\n";
  const double lx = kMapW + 2 * kMargin;
  double ly = kMargin;
  auto legend_row = [&](const char* color, const std::string& label) {
    out += "<rect x=\"" + fixed2(lx) + "\" y=\"" + fixed2(ly) + "\" width=\"14.00\" height=\"14.00\" fill=\"" +
           color + "\"/>\n";
    out += "<text x=\"" + fixed2(lx + 22) + "\" y=\"" + fixed2(ly + 12) + "\">" + xml_escape(label) + "</text>\n";
    ly += 22;
  };
  for (std::size_t i = 0; i < plan.clusters.size(); ++i)
    legend_row(kPalette[i % kPalette.size()], std::to_string(plan.clusters[i].year));
  if (!plan.unassigned_ids.empty()) legend_row(kUnassigned, "unassigned");
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace pavesched
