#include "veronese/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "veronese/errors.hpp"
#include "veronese/parallel.hpp"

#ifndef VERONESE_VERSION
#define VERONESE_VERSION "0.0.0"
#endif

namespace veronese {

namespace {

using nlohmann::json;

constexpr double safe_integer = 9007199254740992.0;  // 2^53

json json_int(const BigInt& v) {
  if (abs(v) < BigInt(9007199254740992LL)) return static_cast<long long>(v);
  return to_string(v);
}

json json_int(std::uint64_t v) {
  if (static_cast<double>(v) < safe_integer) return v;
  return std::to_string(v);
}

json json_vector(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(json_int(x));
  return out;
}

json json_mat(const Mat2& B) { return json::array({json_int(B.a), json_int(B.b), json_int(B.c), json_int(B.d)}); }

/// NaN and infinities have no JSON spelling.
json json_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

[[noreturn]] void bad(const std::string& what) { throw InvalidInput("manifest: " + what); }

// Typed access to the parameters object.
class Params {
 public:
  explicit Params(const std::string& text) {
    try {
      doc_ = json::parse(text);
    } catch (const json::parse_error& e) {
      bad(std::string("parameters are not JSON: ") + e.what());
    }
    if (!doc_.is_object()) bad("parameters must be an object");
    if (doc_.contains("thresholds")) {
      thresholds_ = doc_["thresholds"];
      if (!thresholds_.is_object()) bad("thresholds must be an object");
    }
  }

  const json& at(const std::string& key) const {
    if (!doc_.contains(key)) bad("parameter '" + key + "' missing");
    return doc_.at(key);
  }

  bool has(const std::string& key) const { return doc_.contains(key); }

  double threshold(const std::string& key) const {
    if (!thresholds_.contains(key)) bad("threshold '" + key + "' missing");
    const auto& v = thresholds_.at(key);
    if (!v.is_number()) bad("threshold '" + key + "' must be a number");
    return v.get<double>();
  }

  template <class T>
  T get(const std::string& key) const {
    try {
      return at(key).get<T>();
    } catch (const json::exception& e) {
      bad("parameter '" + key + "': " + e.what());
    }
  }

  template <class T>
  T get_or(const std::string& key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  std::vector<Rational> rationals(const std::string& key) const {
    std::vector<Rational> out;
    for (const auto& v : at(key)) {
      if (v.is_string()) {
        out.push_back(parse_rational(v.get<std::string>()));
      } else if (v.is_number_integer()) {
        out.push_back(Rational(v.get<long long>()));
      } else {
        bad("parameter '" + key + "' needs integers or \"p/q\" strings");
      }
    }
    return out;
  }

  std::vector<Mat2> matrices(const std::string& key) const {
    std::vector<Mat2> out;
    for (const auto& m : at(key)) {
      if (!m.is_array() || m.size() != 4) bad("parameter '" + key + "' needs [a, b, c, d] entries");
      Mat2 B{m[0].get<long long>(), m[1].get<long long>(), m[2].get<long long>(), m[3].get<long long>()};
      if (!B.is_unimodular()) bad("matrix " + B.to_string() + " is not unimodular");
      out.push_back(B);
    }
    return out;
  }

 private:
  json doc_;
  json thresholds_ = json::object();
};

void require_set(double v, const char* name) {
  if (std::isnan(v)) throw InvalidInput(std::string("threshold '") + name + "' not set");
}

bool is_nondecreasing(const std::vector<std::uint64_t>& v) { return std::is_sorted(v.begin(), v.end()); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json count_row(const CountRecord& r) {
  return {{"kind", "count"},         {"height", r.height},
          {"disc_cap", r.disc_cap},  {"count", json_int(r.count)},
          {"wall_time", r.wall_time}, {"symmetry_factor", r.symmetry_factor}};
}

void add(ExperimentReport& report, const json& record) { report.records.push_back(record.dump()); }

void check(ExperimentReport& report, std::string name, bool passed, std::string detail) {
  add(report, {{"kind", "check"}, {"check", name}, {"passed", passed}, {"detail", detail}});
  report.checks.push_back({std::move(name), passed, std::move(detail)});
}

std::vector<long long> sorted_unique(std::vector<long long> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Recipes: manifest parameters -> typed config -> report.

ExperimentReport count_bound_report(const Params& p, const RunOptions& run) {
  CountBoundConfig c;
  c.heights = p.get<std::vector<long long>>("heights");
  c.disc_caps = p.get<std::vector<long long>>("disc_caps");
  c.constant_height = p.get_or<long long>("constant_height", 0);
  c.constant_disc = p.get_or<long long>("constant_disc", 0);
  c.height_slack = p.threshold("height_slack");
  c.slope_slack = p.threshold("slope_slack");
  c.options = {run.threads, run.budget};
  const auto r = run_count_bound_sweep(c);

  ExperimentReport out;
  out.partial = r.partial;
  for (const auto& rec : r.records) add(out, count_row(rec));
  add(out, {{"kind", "fit"},
            {"alpha_h", json_real(r.fit.alpha_h)},
            {"alpha_d", json_real(r.fit.alpha_d)},
            {"fit_constant", json_real(r.fit.constant)},
            {"bound_constant", json_real(r.constant)},
            {"worst_ratio", json_real(r.worst_ratio)},
            {"slope_height", r.slope_height},
            {"disc_slope", json_real(r.disc_slope.slope)},
            {"disc_slope_r2", json_real(r.disc_slope.r_squared)}});
  check(out, "bound_shape", r.bound_ok,
        "max N/(C H^(2/3+" + fmt(c.height_slack) + ") D^(5/6)) = " + fmt(r.worst_ratio) + " with C = " + fmt(r.constant));
  check(out, "disc_slope", r.slope_ok,
        "slope " + fmt(r.disc_slope.slope) + " at H = " + std::to_string(r.slope_height) + " <= " +
            fmt(5.0 / 6.0 + c.slope_slack));
  if (r.partial) check(out, "complete", false, "budget stopped the sweep before the last height");
  return out;
}

ExperimentReport lower_bound_report(const Params& p, const RunOptions& run) {
  LowerBoundConfig c;
  c.heights = p.get<std::vector<long long>>("heights");
  c.v = p.get<double>("v");
  c.factor = p.threshold("factor");
  c.options = {run.threads, run.budget};
  const auto r = run_lower_bound_growth(c);

  ExperimentReport out;
  double lo = 0, hi = 0;
  for (const auto& row : r.rows) {
    add(out, {{"kind", "ratio"},
              {"height", row.height},
              {"disc_cap", row.disc_cap},
              {"count", json_int(row.count)},
              {"ratio", json_real(row.ratio)}});
    const double rel = row.ratio / r.rows.front().ratio;
    lo = (&row == &r.rows.front()) ? rel : std::min(lo, rel);
    hi = (&row == &r.rows.front()) ? rel : std::max(hi, rel);
  }
  check(out, "nonvanishing_ratio", r.passed,
        "ratio relative to first height in [" + fmt(lo) + ", " + fmt(hi) + "], factor " + fmt(c.factor));
  return out;
}

ExperimentReport crosscheck_report(const Params& p, const RunOptions& run) {
  CrosscheckConfig c;
  c.heights = p.get<std::vector<long long>>("heights");
  c.disc_caps = p.get<std::vector<long long>>("disc_caps");
  c.options = {run.threads, run.budget};
  const auto r = run_count_crosscheck(c);

  ExperimentReport out;
  std::size_t mismatches = 0;
  for (const auto& row : r.rows) {
    add(out, {{"kind", "crosscheck"},
              {"height", row.height},
              {"disc_cap", row.disc_cap},
              {"symmetric", json_int(row.symmetric)},
              {"naive", json_int(row.naive)}});
    if (row.symmetric != row.naive) ++mismatches;
  }
  check(out, "naive_equal", r.passed,
        std::to_string(r.rows.size()) + " grid points, " + std::to_string(mismatches) + " mismatches");
  return out;
}

ExperimentReport davenport_report(const Params& p, const RunOptions& run) {
  DavenportConfig c;
  c.height_caps = p.get<std::vector<int>>("height_caps");
  c.disc_caps = p.get<std::vector<long long>>("disc_caps");
  c.min_r2 = p.threshold("min_r2");
  c.slope_min = p.threshold("slope_min");
  c.slope_max = p.threshold("slope_max");
  c.options.threads = run.threads;
  c.options.budget = run.budget;
  c.options.entry_bound = p.get_or<int>("entry_bound", c.options.entry_bound);
  c.options.depth = p.get_or<int>("depth", c.options.depth);
  const auto r = run_davenport_fit(c);

  ExperimentReport out;
  for (const auto& s : r.series) {
    for (std::size_t i = 0; i < s.totals.size(); ++i)
      add(out, {{"kind", "total"},
                {"height_cap", s.height_cap},
                {"disc_cap", c.disc_caps[i]},
                {"classes", json_int(s.totals[i])},
                {"unresolved_pairs", json_int(static_cast<std::uint64_t>(s.unresolved_pairs))}});
  }
  add(out, {{"kind", "fit"},
            {"slope", json_real(r.fit.slope)},
            {"intercept", json_real(r.fit.intercept)},
            {"r_squared", json_real(r.fit.r_squared)}});
  const bool fit_ok = r.fit.r_squared >= c.min_r2 && r.fit.slope >= c.slope_min && r.fit.slope <= c.slope_max;
  check(out, "linear_fit", fit_ok,
        "slope " + fmt(r.fit.slope) + " in [" + fmt(c.slope_min) + ", " + fmt(c.slope_max) + "], R^2 " +
            fmt(r.fit.r_squared) + " >= " + fmt(c.min_r2));
  check(out, "monotone_in_d", r.monotone_in_d, "totals non-decreasing in D for every height cap");
  check(out, "nondecreasing_in_cap", r.nondecreasing_in_cap, "totals non-decreasing as the height cap grows");
  return out;
}

ExperimentReport box_report(const Params& p, const RunOptions&) {
  BoxAuditConfig c;
  c.ns = p.get<std::vector<int>>("ns");
  c.lambdas = p.rationals("lambdas");
  c.centres = p.rationals("centres");
  c.ks = p.get<std::vector<int>>("ks");
  if (p.has("dilation_cap")) c.dilation_cap = parse_rational(p.get<std::string>("dilation_cap"));
  c.minima.budget = p.get_or<double>("minima_budget", c.minima.budget);
  c.span_constant_max = p.threshold("span_constant_max");
  const auto r = run_box_audit(c);

  ExperimentReport out;
  std::size_t minkowski_fail = 0, curve_fail = 0, incomplete = 0;
  for (const auto& row : r.rows) {
    json taus = json::array();
    for (const auto& t : row.minima.taus) taus.push_back(t.to_string());
    json witnesses = json::array();
    for (const auto& w : row.minima.witnesses) witnesses.push_back(json_vector(w));
    add(out, {{"kind", "box"},
              {"n", row.n},
              {"lambda", to_string(row.lambda)},
              {"x0", to_string(row.x0)},
              {"k", row.k},
              {"complete", row.complete},
              {"taus", taus},
              {"tau_values", row.minima.tau_values()},
              {"witnesses", witnesses},
              {"volume", row.minima.volume.to_string()},
              {"minkowski_lower", row.minima.minkowski_lower},
              {"minkowski_upper", row.minima.minkowski_upper},
              {"product", json_real(row.minima.product)},
              {"delta", json_real(row.delta)},
              {"curve_gauge", json_real(row.curve_gauge)},
              {"curve_ok", row.curve_ok},
              {"span_dim", row.span_dim},
              {"span_height", json_real(row.span_height)},
              {"span_exponent", json_real(row.span_exponent)},
              {"span_ratio", json_real(row.span_ratio)}});
    if (!row.minima.minkowski_ok()) ++minkowski_fail;
    if (!row.curve_ok) ++curve_fail;
    if (!row.complete) ++incomplete;
  }
  const std::string boxes = std::to_string(r.rows.size()) + " boxes";
  check(out, "minkowski", r.minkowski_ok,
        boxes + ", " + std::to_string(minkowski_fail) + " outside 2^d/d! <= prod tau * vol <= 2^d, " +
            std::to_string(incomplete) + " incomplete");
  check(out, "curve_point", r.curve_ok, boxes + ", " + std::to_string(curve_fail) + " with tau_1 above the curve point");
  check(out, "span_height_bound", r.span_ok,
        "max H(span) / Q^((n-d+1) lambda) = " + fmt(r.span_constant) + " <= " + fmt(c.span_constant_max));
  return out;
}

ExperimentReport root_gap_report(const Params& p, const RunOptions& run) {
  RootGapConfig c;
  c.fit_height = p.get<int>("fit_height");
  c.check_height = p.get<int>("check_height");
  c.tolerance = p.threshold("tolerance");
  c.threads = run.threads;
  const auto r = run_root_gap_epsilon(c);

  ExperimentReport out;
  add(out, {{"kind", "epsilon"},
            {"height", c.fit_height},
            {"classes", json_int(static_cast<std::uint64_t>(r.fit_classes))},
            {"epsilon", json_real(r.eps_fit)},
            {"witness", json_vector(r.fit_witness.coeffs())}});
  add(out, {{"kind", "epsilon"},
            {"height", c.check_height},
            {"classes", json_int(static_cast<std::uint64_t>(r.check_classes))},
            {"epsilon", json_real(r.eps_check)},
            {"witness", json_vector(r.check_witness.coeffs())}});
  check(out, "epsilon_stable", r.passed,
        "eps " + fmt(r.eps_fit) + " at H <= " + std::to_string(c.fit_height) + ", " + fmt(r.eps_check) + " at H <= " +
            std::to_string(c.check_height) + " (" + r.check_witness.to_string() + "), tolerance " +
            fmt(c.tolerance));
  return out;
}

ExperimentReport transport_report(const Params& p, const RunOptions&, std::uint64_t seed) {
  TransportSweepConfig c;
  c.points = p.get<std::vector<std::string>>("points");
  c.ns = p.get<std::vector<int>>("ns");
  c.q_max = p.get<long long>("q_max");
  c.matrices = p.get<int>("matrices");
  c.entry_bound = p.get<int>("entry_bound");
  c.constant = p.threshold("constant");
  c.seed = seed;
  const auto r = run_transport_sweep(c);

  ExperimentReport out;
  double worst_err = 0, worst_height = 0, worst_mu = 0;
  for (const auto& row : r.rows) {
    add(out, {{"kind", "transport"},
              {"x", row.x},
              {"n", row.n},
              {"B", json_mat(row.B)},
              {"mu", json_real(row.mu)},
              {"records", json_int(static_cast<std::uint64_t>(row.records))},
              {"max_error_ratio", json_real(row.max_error_ratio)},
              {"max_height_ratio", json_real(row.max_height_ratio)},
              {"max_mu_error_ratio", json_real(row.max_mu_error_ratio)},
              {"passed", row.passed}});
    worst_err = std::max(worst_err, row.max_error_ratio);
    worst_height = std::max(worst_height, row.max_height_ratio);
    worst_mu = std::max(worst_mu, row.max_mu_error_ratio);
  }
  add(out, {{"kind", "summary_mu"}, {"max_mu_error_ratio", json_real(worst_mu)}, {"within_constant", r.mu_passed}});
  check(out, "transport_bound", r.passed,
        "max error ratio " + fmt(worst_err) + ", max height ratio " + fmt(worst_height) + ", constant " +
            fmt(c.constant) + "; with (1+|mu|)^n the error ratio is " + fmt(worst_mu));
  return out;
}

ExperimentReport lambda_report(const Params& p, const RunOptions&) {
  LambdaInvarianceConfig c;
  c.x = p.get<std::string>("x");
  c.n = p.get<int>("n");
  c.q_max = p.get<long long>("q_max");
  c.matrices = p.matrices("matrices");
  c.tolerance = p.threshold("tolerance");
  const auto r = run_lambda_invariance(c);

  ExperimentReport out;
  auto estimate = [](const LambdaEstimate& e) {
    return json{{"lambda", json_real(e.lambda)},
                {"tail_max", json_real(e.tail_max)},
                {"tail_records", json_int(static_cast<std::uint64_t>(e.tail_records))},
                {"rational_hit", e.rational_hit}};
  };
  add(out, {{"kind", "lambda"}, {"B", json_mat(Mat2::identity())}, {"estimate", estimate(r.base)}});
  double worst = 0;
  for (const auto& row : r.rows) {
    add(out, {{"kind", "lambda"},
              {"B", json_mat(row.B)},
              {"estimate", estimate(row.estimate)},
              {"difference", json_real(row.difference)}});
    worst = std::max(worst, row.difference);
  }
  check(out, "lambda_invariance", r.passed,
        "max |lambda(mu_B x) - lambda(x)| = " + fmt(worst) + " <= " + fmt(c.tolerance));
  return out;
}

ExperimentReport dirichlet_report(const Params& p, const RunOptions&) {
  DirichletConfig c;
  c.points = p.get<std::vector<std::string>>("points");
  c.ns = p.get<std::vector<int>>("ns");
  c.q_max = p.get<long long>("q_max");
  c.slack = p.threshold("slack");
  const auto r = run_dirichlet_floor(c);

  ExperimentReport out;
  std::size_t failed = 0;
  for (const auto& row : r.rows) {
    add(out, {{"kind", "decade"},
              {"x", row.x},
              {"n", row.n},
              {"low", row.decade.low},
              {"top", row.decade.top},
              {"q", json_vector(row.decade.q)},
              {"err", json_real(row.decade.err)},
              {"bound", json_real(row.decade.bound)},
              {"ok", row.decade.ok}});
    if (!row.decade.ok) ++failed;
  }
  check(out, "decade_floor", r.passed,
        std::to_string(r.rows.size()) + " decades, " + std::to_string(failed) + " above top^(-1/n+" + fmt(c.slack) +
            ")");
  return out;
}

}  // namespace

std::string module_version() { return VERONESE_VERSION; }

ExperimentManifest parse_manifest(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("not JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  ExperimentManifest m;
  try {
    if (!doc.contains("name")) bad("'name' missing");
    m.name = doc.at("name").get<std::string>();
    if (!doc.contains("module_version")) bad("'module_version' missing");
    m.module_version = doc.at("module_version").get<std::string>();
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) bad("'seed' must be an unsigned 64-bit integer");
      m.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("output_path")) m.output_path = doc.at("output_path").get<std::string>();
    if (doc.contains("parameters")) {
      if (!doc.at("parameters").is_object()) bad("'parameters' must be an object");
      m.parameters = doc.at("parameters").dump();
    }
  } catch (const json::exception& e) {
    bad(e.what());
  }
  return m;
}

ExperimentManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("manifest: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

bool ExperimentReport::passed() const {
  if (partial || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ExperimentReport::jsonl() const {
  std::string out;
  for (const auto& r : records) {
    out += r;
    out += '\n';
  }
  return out;
}

std::string ExperimentReport::summary_csv() const {
  std::string out = "check,passed,detail\n";
  for (const auto& c : checks) out += csv_field(c.name) + "," + (c.passed ? "true" : "false") + "," + csv_field(c.detail) + "\n";
  return out;
}

std::vector<std::string> experiment_names() {
  return {"count_bound_sweep",  "lower_bound_growth", "count_crosscheck", "davenport_fit", "box_audit",
          "root_gap_epsilon", "transport_sweep",    "lambda_invariance", "dirichlet_floor"};
}

ExperimentReport run_experiment(const ExperimentManifest& manifest, const RunOptions& options) {
  if (manifest.module_version != module_version())
    bad("module_version " + manifest.module_version + " does not match " + module_version());
  const Params p(manifest.parameters);
  ExperimentReport body;
  const auto& name = manifest.name;
  if (name == "count_bound_sweep") {
    body = count_bound_report(p, options);
  } else if (name == "lower_bound_growth") {
    body = lower_bound_report(p, options);
  } else if (name == "count_crosscheck") {
    body = crosscheck_report(p, options);
  } else if (name == "davenport_fit") {
    body = davenport_report(p, options);
  } else if (name == "box_audit") {
    body = box_report(p, options);
  } else if (name == "root_gap_epsilon") {
    body = root_gap_report(p, options);
  } else if (name == "transport_sweep") {
    body = transport_report(p, options, manifest.seed);
  } else if (name == "lambda_invariance") {
    body = lambda_report(p, options);
  } else if (name == "dirichlet_floor") {
    body = dirichlet_report(p, options);
  } else {
    bad("unknown experiment '" + name + "'");
  }

  ExperimentReport report;
  report.name = name;
  report.partial = body.partial;
  report.checks = std::move(body.checks);
  add(report, {{"kind", "manifest"},
               {"name", name},
               {"seed", json_int(static_cast<std::uint64_t>(manifest.seed))},
               {"module_version", manifest.module_version},
               {"parameters", json::parse(manifest.parameters)}});
  for (auto& r : body.records) report.records.push_back(std::move(r));
  add(report, {{"kind", "summary"}, {"name", name}, {"partial", report.partial}, {"passed", report.passed()}});
  return report;
}

void write_report(const ExperimentReport& report, const std::string& path) {
  const std::filesystem::path base(path);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  auto write = [](const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + file);
    out << text;
  };
  write(path + ".jsonl", report.jsonl());
  write(path + ".csv", report.summary_csv());
}

CountBoundResult run_count_bound_sweep(const CountBoundConfig& config) {
  require_set(config.height_slack, "height_slack");
  require_set(config.slope_slack, "slope_slack");
  const auto heights = sorted_unique(config.heights);
  const auto caps = sorted_unique(config.disc_caps);
  if (heights.empty() || caps.empty()) throw InvalidInput("run_count_bound_sweep: empty grid");

  CountBoundResult r;
  for (long long h : heights) {
    try {
      auto rows = count_nhd_grid(h, caps, config.options);
      std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.disc_cap < y.disc_cap; });
      r.records.insert(r.records.end(), rows.begin(), rows.end());
    } catch (const BudgetExceeded&) {
      r.partial = true;
      break;
    }
  }
  if (r.records.empty()) return r;

  const double h_exp = 2.0 / 3.0 + config.height_slack;
  auto shape = [&](const CountRecord& rec) {
    return std::pow(static_cast<double>(rec.height), h_exp) * std::pow(static_cast<double>(rec.disc_cap), 5.0 / 6.0);
  };
  const long long ch = config.constant_height ? config.constant_height : heights.front();
  const long long cd = config.constant_disc ? config.constant_disc : caps.front();
  auto at = std::find_if(r.records.begin(), r.records.end(),
                         [&](const CountRecord& rec) { return rec.height == ch && rec.disc_cap == cd; });
  if (at == r.records.end()) throw InvalidInput("run_count_bound_sweep: fitting point is not on the grid");
  r.constant = static_cast<double>(at->count) / shape(*at);
  for (const auto& rec : r.records) r.worst_ratio = std::max(r.worst_ratio, static_cast<double>(rec.count) / (r.constant * shape(rec)));
  r.bound_ok = r.constant > 0 && r.worst_ratio <= 1.0;

  std::set<long long> seen;
  for (const auto& rec : r.records) seen.insert(rec.height);
  if (seen.size() >= 3 && caps.size() >= 3) r.fit = fit_exponents(r.records);

  r.slope_height = r.records.back().height;
  std::vector<double> ds, ns;
  for (const auto& rec : r.records) {
    if (rec.height == r.slope_height && rec.count > 0) {
      ds.push_back(static_cast<double>(rec.disc_cap));
      ns.push_back(static_cast<double>(rec.count));
    }
  }
  if (ds.size() >= 2) {
    r.disc_slope = fit_power_law(ds, ns);
    r.slope_ok = r.disc_slope.slope <= 5.0 / 6.0 + config.slope_slack;
  }
  return r;
}

LowerBoundResult run_lower_bound_growth(const LowerBoundConfig& config) {
  require_set(config.v, "v");
  require_set(config.factor, "factor");
  LowerBoundResult r;
  for (long long h : config.heights) {
    LowerBoundRow row;
    row.height = h;
    row.disc_cap = static_cast<long long>(std::ceil(std::pow(static_cast<double>(h), 4.0 - 2.0 * config.v)));
    row.count = count_nhd(h, row.disc_cap, config.options).count;
    row.ratio = static_cast<double>(row.count) / std::pow(static_cast<double>(h), 4.0 - 5.0 * config.v / 3.0);
    r.rows.push_back(row);
  }
  if (r.rows.empty() || r.rows.front().ratio <= 0) return r;
  const double first = r.rows.front().ratio;
  r.passed = std::all_of(r.rows.begin(), r.rows.end(), [&](const LowerBoundRow& row) {
    return row.ratio > 0 && row.ratio * config.factor >= first && row.ratio <= first * config.factor;
  });
  return r;
}

CrosscheckResult run_count_crosscheck(const CrosscheckConfig& config) {
  CrosscheckResult r;
  r.passed = true;
  for (long long h : config.heights) {
    auto fast = count_nhd_grid(h, config.disc_caps, config.options);
    auto slow = count_nhd_naive(h, config.disc_caps, config.options);
    for (std::size_t i = 0; i < config.disc_caps.size(); ++i) {
      auto find = [&](const std::vector<CountRecord>& rows) {
        for (const auto& rec : rows)
          if (rec.disc_cap == config.disc_caps[i]) return rec.count;
        throw InvalidInput("run_count_crosscheck: missing cap");
      };
      CrosscheckRow row{h, config.disc_caps[i], find(fast), find(slow)};
      r.passed = r.passed && row.symmetric == row.naive;
      r.rows.push_back(row);
    }
  }
  r.passed = r.passed && !r.rows.empty();
  return r;
}

DavenportResult run_davenport_fit(const DavenportConfig& config) {
  require_set(config.min_r2, "min_r2");
  require_set(config.slope_min, "slope_min");
  require_set(config.slope_max, "slope_max");
  if (config.height_caps.empty() || config.disc_caps.size() < 2)
    throw InvalidInput("run_davenport_fit: needs a height cap and two discriminant caps");
  const long long max_d = *std::max_element(config.disc_caps.begin(), config.disc_caps.end());

  DavenportResult r;
  for (int cap : config.height_caps) {
    const auto census = enumerate_classes(cap, max_d, config.options);
    DavenportSeries s;
    s.height_cap = cap;
    s.unresolved_pairs = census.unresolved_pairs;
    for (long long D : config.disc_caps) {
      std::uint64_t total = 0;
      for (const auto& [d, h] : census.histogram)
        if (d >= -D && d <= D) total += h;
      s.totals.push_back(total);
    }
    r.series.push_back(std::move(s));
  }

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < config.disc_caps.size(); ++i) {
    xs.push_back(static_cast<double>(config.disc_caps[i]));
    ys.push_back(static_cast<double>(r.series.front().totals[i]));
  }
  r.fit = fit_line(xs, ys);

  std::vector<std::size_t> order(config.disc_caps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return config.disc_caps[i] < config.disc_caps[j]; });
  r.monotone_in_d = std::all_of(r.series.begin(), r.series.end(), [&](const DavenportSeries& s) {
    std::vector<std::uint64_t> v;
    for (auto i : order) v.push_back(s.totals[i]);
    return is_nondecreasing(v);
  });
  std::vector<std::size_t> by_cap(r.series.size());
  std::iota(by_cap.begin(), by_cap.end(), 0);
  std::sort(by_cap.begin(), by_cap.end(), [&](auto i, auto j) { return r.series[i].height_cap < r.series[j].height_cap; });
  r.nondecreasing_in_cap = true;
  for (std::size_t k = 1; k < by_cap.size(); ++k)
    for (std::size_t i = 0; i < config.disc_caps.size(); ++i)
      if (r.series[by_cap[k]].totals[i] < r.series[by_cap[k - 1]].totals[i]) r.nondecreasing_in_cap = false;
  r.passed = r.fit.r_squared >= config.min_r2 && r.fit.slope >= config.slope_min && r.fit.slope <= config.slope_max &&
             r.monotone_in_d && r.nondecreasing_in_cap;
  return r;
}

BoxAuditResult run_box_audit(const BoxAuditConfig& config) {
  require_set(config.span_constant_max, "span_constant_max");
  BoxAuditResult r;
  r.minkowski_ok = true;
  r.curve_ok = true;
  for (int n : config.ns) {
    if (n < 1 || n > 4) throw InvalidInput("run_box_audit: n must lie in [1, 4]");
    for (const auto& lambda : config.lambdas)
      for (const auto& x0 : config.centres)
        for (int k : config.ks) {
          if (k < 1 || k > 12) throw InvalidInput("run_box_audit: Q = 2^k needs 1 <= k <= 12");
          BoxAuditRow row;
          row.n = n;
          row.lambda = lambda;
          row.x0 = x0;
          row.k = k;
          const BoxSpec spec{n, x0, Rational(BigInt(1) << k), lambda};
          const LinearBox box = spec.box();
          try {
            row.minima = successive_minima(box, config.dilation_cap, config.minima);
          } catch (const MinimaIncomplete& e) {
            row.complete = false;
            row.minima = e.partial();
          }
          const double log_q = k * std::log(2.0);
          if (row.complete) {
            const auto& last = row.minima.taus.back();
            row.delta = to_double(last.exponent) + std::log(to_double(last.coefficient)) / log_q;
          }

          // (q^n, q^(n-1) p, ..., p^n) for x0 = p/q lies on the curve.
          const BigInt p = numerator(x0), q = denominator(x0);
          IntVector curve;
          for (int i = 0; i <= n; ++i) curve.push_back(ipow(q, static_cast<unsigned>(n - i)) * ipow(p, static_cast<unsigned>(i)));
          const ScaledRational g = box.gauge(curve);
          row.curve_gauge = g.to_double(box.base);
          row.curve_ok = row.complete && compare(row.minima.taus.front(), g, box.base) <= 0;

          if (row.complete && compare(row.minima.taus.back(), {1, 0}, box.base) > 0) {
            std::vector<IntVector> small;
            for (std::size_t i = 0; i < row.minima.taus.size(); ++i)
              if (compare(row.minima.taus[i], {1, 0}, box.base) <= 0) small.push_back(row.minima.witnesses[i]);
            row.span_dim = static_cast<int>(small.size());
            if (!small.empty()) {
              row.span_height = saturated_height(small).height;
              row.span_exponent = (n - row.span_dim + 1) * to_double(lambda);
              row.span_ratio = row.span_height / std::exp(row.span_exponent * log_q);
              r.span_constant = std::max(r.span_constant, row.span_ratio);
            }
          }
          r.minkowski_ok = r.minkowski_ok && row.complete && row.minima.minkowski_ok();
          r.curve_ok = r.curve_ok && row.curve_ok;
          r.rows.push_back(std::move(row));
        }
  }
  r.span_ok = r.span_constant <= config.span_constant_max;
  if (r.rows.empty()) r.minkowski_ok = r.curve_ok = false;
  return r;
}

RootGapResult run_root_gap_epsilon(const RootGapConfig& config) {
  require_set(config.tolerance, "tolerance");
  if (config.fit_height < 1 || config.check_height < config.fit_height)
    throw InvalidInput("run_root_gap_epsilon: needs 1 <= fit_height <= check_height");
  const int H = config.check_height;

  // Minimal representative for every cubic with c3 > 0 and D != 0; -P lies
  // in the class of P.
  struct Hit {
    int height;
    IntPoly representative;
  };
  std::vector<std::vector<Hit>> slots(static_cast<std::size_t>(H));
  parallel_for(slots.size(), config.threads, [&](std::size_t i) {
    const long long c3 = static_cast<long long>(i) + 1;
    for (long long c2 = -H; c2 <= H; ++c2)
      for (long long c1 = -H; c1 <= H; ++c1)
        for (long long c0 = -H; c0 <= H; ++c0) {
          const IntPoly p{c0, c1, c2, c3};
          if (cubic_discriminant(c0, c1, c2, c3) == 0) continue;
          const int h = static_cast<int>(std::max({c3, std::abs(c2), std::abs(c1), std::abs(c0)}));
          slots[i].push_back({h, reduce_min_hd(p).representative});
        }
  });

  // Smallest input height reaching each representative.
  std::map<IntVector, int> first_height;
  for (const auto& slot : slots)
    for (const auto& hit : slot) {
      auto [it, inserted] = first_height.emplace(hit.representative.coeffs(), hit.height);
      if (!inserted) it->second = std::min(it->second, hit.height);
    }

  RootGapResult r;
  r.eps_fit = r.eps_check = std::numeric_limits<double>::infinity();
  for (const auto& [coeffs, h] : first_height) {
    const IntPoly rep(coeffs);
    const double gap = min_root_gap(rep).lower;
    if (h <= config.fit_height) {
      ++r.fit_classes;
      if (gap < r.eps_fit) {
        r.eps_fit = gap;
        r.fit_witness = rep;
      }
    }
    ++r.check_classes;
    if (gap < r.eps_check) {
      r.eps_check = gap;
      r.check_witness = rep;
    }
  }
  r.passed = r.fit_classes > 0 && std::abs(r.eps_check - r.eps_fit) <= config.tolerance * r.eps_fit;
  return r;
}

std::vector<Mat2> random_unimodular_matrices(std::uint64_t seed, int count, int bound) {
  if (bound < 1) throw InvalidInput("random_unimodular_matrices: bound must be >= 1");
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  auto draw = [&] { return static_cast<long long>(rng() % span) - bound; };
  std::vector<Mat2> out;
  while (static_cast<int>(out.size()) < count) {
    Mat2 B{draw(), draw(), draw(), draw()};
    if (B.is_unimodular()) out.push_back(B);
  }
  return out;
}

TransportSweepResult run_transport_sweep(const TransportSweepConfig& config) {
  require_set(config.constant, "constant");
  const auto matrices = random_unimodular_matrices(config.seed, config.matrices, config.entry_bound);
  TransportSweepResult r;
  r.passed = r.mu_passed = true;
  for (const auto& text : config.points) {
    const RealExpr x = RealExpr::parse(text);
    for (int n : config.ns)
      for (const auto& B : matrices) {
        const auto report = check_transport(x, B, n, config.q_max, config.constant);
        TransportSweepRow row;
        row.x = text;
        row.n = n;
        row.B = B;
        const double xv = x.approx();
        row.mu = (to_double(B.a) * xv + to_double(B.b)) / (to_double(B.c) * xv + to_double(B.d));
        row.records = report.rows.size();
        row.max_error_ratio = report.max_error_ratio;
        row.max_height_ratio = report.max_height_ratio;
        row.max_mu_error_ratio = report.max_error_ratio / std::pow(1.0 + std::abs(row.mu), n);
        row.passed = report.passed;
        r.passed = r.passed && row.passed;
        r.mu_passed = r.mu_passed && row.max_mu_error_ratio <= config.constant;
        r.rows.push_back(row);
      }
  }
  if (r.rows.empty()) r.passed = r.mu_passed = false;
  return r;
}

LambdaInvarianceResult run_lambda_invariance(const LambdaInvarianceConfig& config) {
  require_set(config.tolerance, "tolerance");
  const RealExpr x = RealExpr::parse(config.x);
  LambdaInvarianceResult r;
  r.base = estimate_lambda(x, config.n, config.q_max);
  r.passed = !config.matrices.empty();
  for (const auto& B : config.matrices) {
    LambdaInvarianceRow row;
    row.B = B;
    row.estimate = estimate_lambda(x.mobius(B), config.n, config.q_max);
    row.difference = std::abs(row.estimate.lambda - r.base.lambda);
    r.passed = r.passed && row.difference <= config.tolerance;
    r.rows.push_back(row);
  }
  return r;
}

DirichletResult run_dirichlet_floor(const DirichletConfig& config) {
  require_set(config.slack, "slack");
  DirichletResult r;
  r.passed = true;
  for (const auto& text : config.points) {
    const RealExpr x = RealExpr::parse(text);
    for (int n : config.ns) {
      const auto records = best_approx_seq(x, n, config.q_max);
      for (const auto& d : dirichlet_decades(records, n, config.q_max, config.slack)) {
        r.passed = r.passed && d.ok;
        r.rows.push_back({text, n, d});
      }
    }
  }
  if (r.rows.empty()) r.passed = false;
  return r;
}

}  // namespace veronese
