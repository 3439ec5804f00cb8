#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "veronese/approx.hpp"
#include "veronese/classes.hpp"
#include "veronese/counting.hpp"
#include "veronese/lattice.hpp"
#include "veronese/stats.hpp"

namespace veronese {

/// Version string written into every report; manifests naming another
/// version are rejected.
std::string module_version();

/// A run request. `parameters` holds the JSON text of the parameters object,
/// including its "thresholds" member.
struct ExperimentManifest {
  std::string name;
  std::string parameters = "{}";
  std::uint64_t seed = 0;
  std::string module_version;
  std::string output_path;
};

ExperimentManifest parse_manifest(std::string_view json_text);
ExperimentManifest load_manifest(const std::string& path);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  /// One JSON object per entry, written as JSON lines.
  std::vector<std::string> records;
  std::vector<Check> checks;
  /// The run stopped early (budget); never counts as a pass.
  bool partial = false;

  bool passed() const;
  std::string jsonl() const;
  /// Header `check,passed,detail` and one row per check.
  std::string summary_csv() const;
};

struct RunOptions {
  int threads = 0;
  double budget = 2e10;
};

std::vector<std::string> experiment_names();

/// Dispatches on manifest.name. Throws InvalidInput for unknown names,
/// missing thresholds or a module_version mismatch.
ExperimentReport run_experiment(const ExperimentManifest& manifest, const RunOptions& options = {});

/// Writes <path>.jsonl and <path>.csv, creating parent directories.
void write_report(const ExperimentReport& report, const std::string& path);

inline constexpr double unset = std::numeric_limits<double>::quiet_NaN();

// N(H, D) over a grid against c H^(2/3 + slack) D^(5/6).

struct CountBoundConfig {
  std::vector<long long> heights;
  std::vector<long long> disc_caps;
  /// Grid point where the constant is fitted; 0 picks the smallest.
  long long constant_height = 0;
  long long constant_disc = 0;
  double height_slack = unset;
  double slope_slack = unset;
  CountOptions options;
};

struct CountBoundResult {
  std::vector<CountRecord> records;
  bool partial = false;
  ExponentFit fit;
  /// N / (H^(2/3 + slack) D^(5/6)) at the fitting point.
  double constant = 0.0;
  /// Largest N / (constant H^(2/3 + slack) D^(5/6)) over the grid.
  double worst_ratio = 0.0;
  bool bound_ok = false;
  long long slope_height = 0;
  LineFit disc_slope;
  bool slope_ok = false;
};

CountBoundResult run_count_bound_sweep(const CountBoundConfig& config);

// N(H, ceil(H^(4 - 2v))) / H^(4 - 5v/3) stays within a factor of its first value.

struct LowerBoundConfig {
  std::vector<long long> heights;
  double v = unset;
  double factor = unset;
  CountOptions options;
};

struct LowerBoundRow {
  long long height = 0;
  long long disc_cap = 0;
  std::uint64_t count = 0;
  double ratio = 0.0;
};

struct LowerBoundResult {
  std::vector<LowerBoundRow> rows;
  bool passed = false;
};

LowerBoundResult run_lower_bound_growth(const LowerBoundConfig& config);

// Symmetric counting against the four-loop oracle.

struct CrosscheckConfig {
  std::vector<long long> heights;
  std::vector<long long> disc_caps;
  CountOptions options;
};

struct CrosscheckRow {
  long long height = 0;
  long long disc_cap = 0;
  std::uint64_t symmetric = 0;
  std::uint64_t naive = 0;
};

struct CrosscheckResult {
  std::vector<CrosscheckRow> rows;
  bool passed = false;
};

CrosscheckResult run_count_crosscheck(const CrosscheckConfig& config);

// Sum of h_found(d) over |d| <= D, linear in D.

struct DavenportConfig {
  std::vector<int> height_caps;
  std::vector<long long> disc_caps;
  double min_r2 = unset;
  double slope_min = unset;
  double slope_max = unset;
  ClassOptions options;
};

struct DavenportSeries {
  int height_cap = 0;
  std::vector<std::uint64_t> totals;
  std::size_t unresolved_pairs = 0;
};

struct DavenportResult {
  std::vector<DavenportSeries> series;
  /// totals against D for the first height cap
  LineFit fit;
  bool monotone_in_d = false;
  bool nondecreasing_in_cap = false;
  bool passed = false;
};

DavenportResult run_davenport_fit(const DavenportConfig& config);

// Successive minima of Veronese boxes.

struct BoxAuditConfig {
  std::vector<int> ns;
  std::vector<Rational> lambdas;
  std::vector<Rational> centres;
  std::vector<int> ks;
  Rational dilation_cap = Rational(1LL << 30);
  MinimaOptions minima;
  /// Bound on H(span) / Q^((n - d + 1) lambda) over boxes with tau_{n+1} > 1.
  double span_constant_max = unset;
};

struct BoxAuditRow {
  int n = 0;
  Rational lambda;
  Rational x0;
  int k = 0;
  /// False when the dilation cap stopped the search; minima is then partial.
  bool complete = true;
  MinimaResult minima;
  /// log_Q tau_{n+1}
  double delta = 0.0;
  /// Gauge of (q^n, q^(n-1) p, ..., p^n) for x0 = p/q.
  double curve_gauge = 0.0;
  bool curve_ok = false;
  /// Number of minima <= 1 and the height of their saturated span, when
  /// tau_{n+1} > 1.
  int span_dim = 0;
  double span_height = 0.0;
  double span_exponent = 0.0;
  double span_ratio = 0.0;
};

struct BoxAuditResult {
  std::vector<BoxAuditRow> rows;
  bool minkowski_ok = false;
  bool curve_ok = false;
  double span_constant = 0.0;
  bool span_ok = false;
};

BoxAuditResult run_box_audit(const BoxAuditConfig& config);

// Root separation of minimal representatives.

struct RootGapConfig {
  int fit_height = 5;
  int check_height = 8;
  double tolerance = unset;
  int threads = 0;
};

struct RootGapResult {
  double eps_fit = 0.0;
  IntPoly fit_witness;
  std::size_t fit_classes = 0;
  double eps_check = 0.0;
  IntPoly check_witness;
  std::size_t check_classes = 0;
  bool passed = false;
};

RootGapResult run_root_gap_epsilon(const RootGapConfig& config);

// Transport of best approximations through phi_n(B).

struct TransportSweepConfig {
  std::vector<std::string> points;
  std::vector<int> ns;
  long long q_max = 0;
  int matrices = 0;
  int entry_bound = 3;
  double constant = unset;
  std::uint64_t seed = 0;
};

struct TransportSweepRow {
  std::string x;
  int n = 0;
  Mat2 B;
  double mu = 0.0;
  std::size_t records = 0;
  double max_error_ratio = 0.0;
  double max_height_ratio = 0.0;
  /// max_error_ratio / (1 + |mu|)^n
  double max_mu_error_ratio = 0.0;
  bool passed = false;
};

struct TransportSweepResult {
  std::vector<TransportSweepRow> rows;
  bool passed = false;
  bool mu_passed = false;
};

TransportSweepResult run_transport_sweep(const TransportSweepConfig& config);

/// Unimodular matrices with entries in [-bound, bound] drawn from a
/// mt19937_64 stream; platform independent.
std::vector<Mat2> random_unimodular_matrices(std::uint64_t seed, int count, int bound);

// lambda_n at x and at mu_B(x).

struct LambdaInvarianceConfig {
  std::string x;
  int n = 0;
  long long q_max = 0;
  std::vector<Mat2> matrices;
  double tolerance = unset;
};

struct LambdaInvarianceRow {
  Mat2 B;
  LambdaEstimate estimate;
  double difference = 0.0;
};

struct LambdaInvarianceResult {
  LambdaEstimate base;
  std::vector<LambdaInvarianceRow> rows;
  bool passed = false;
};

LambdaInvarianceResult run_lambda_invariance(const LambdaInvarianceConfig& config);

// Dirichlet exponent once per decade.

struct DirichletConfig {
  std::vector<std::string> points;
  std::vector<int> ns;
  long long q_max = 0;
  double slack = unset;
};

struct DirichletRow {
  std::string x;
  int n = 0;
  DecadeCheck decade;
};

struct DirichletResult {
  std::vector<DirichletRow> rows;
  bool passed = false;
};

DirichletResult run_dirichlet_floor(const DirichletConfig& config);

}  // namespace veronese
