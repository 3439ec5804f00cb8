#pragma once

#include <vector>

#include "veronese/mobius.hpp"
#include "veronese/realexpr.hpp"

namespace veronese {

/// q_i is the nearest integer to q0 x^i; err = max_i |q0 x^i - q_i|.
struct ApproxRecord {
  IntVector q;
  double err = 0.0;
  /// -log(err) / log(q0); NaN for q0 = 1.
  double effective_exponent = 0.0;
  /// err is exactly zero (x is rational, or numerically indistinguishable).
  bool exact_hit = false;
};

/// Every q0 in [1, q_max] whose error beats all smaller q0, in increasing
/// order. Stops after an exact hit. Throws PrecisionExhausted when a nearest
/// integer cannot be decided.
std::vector<ApproxRecord> best_approx_seq(const RealExpr& x, int n, long long q_max);

/// Dirichlet check for q0 in [10^k, 10^(k+1)): the best record with q0 <= top
/// (top the decade's last value, clipped to q_max) must have
/// err <= top^(-1/n + slack).
struct DecadeCheck {
  long long low = 1;
  long long top = 1;
  IntVector q;
  double err = 0.0;
  double bound = 0.0;
  bool ok = false;
};

std::vector<DecadeCheck> dirichlet_decades(const std::vector<ApproxRecord>& records, int n, long long q_max,
                                           double slack = 0.05);

struct LambdaEstimate {
  /// Slope of -log err against log q0 over the tail records.
  double lambda = 0.0;
  /// Largest effective exponent among the tail records.
  double tail_max = 0.0;
  std::size_t tail_records = 0;
  bool rational_hit = false;
};

/// Tail = records with q0 > q_max^(1/4). A rational hit gives lambda = +inf.
LambdaEstimate estimate_lambda(const RealExpr& x, int n, long long q_max);
LambdaEstimate estimate_lambda(const std::vector<ApproxRecord>& records, long long q_max);

/// a_0 + a_1 x + ... + a_n x^n with a_0 the nearest integer choice.
struct DualRecord {
  IntVector a;
  double value = 0.0;
  /// -log(value) / log(||a||_inf); NaN when ||a||_inf = 1.
  double effective_exponent = 0.0;
  bool algebraic_hit = false;
};

/// Records of |a . (1, x, ..., x^n)| over ||a||_inf <= a_max, ordered by
/// ||a||_inf, one representative of each pair ±a.
std::vector<DualRecord> dual_best(const RealExpr& x, int n, long long a_max, double budget = 5e9);

struct TransportRow {
  IntVector p;
  IntVector q;
  double err_p = 0.0;
  double err_q = 0.0;
  double error_ratio = 0.0;
  double height_ratio = 0.0;
  double bare_height_ratio = 0.0;
};

struct TransportReport {
  std::vector<TransportRow> rows;
  /// max err(q) / (||B||^n err(p))
  double max_error_ratio = 0.0;
  /// max |q0| / (|cx+d|^n p0 + ||B||^n err(p))
  double max_height_ratio = 0.0;
  /// max |q0| / (|cx+d|^n p0)
  double max_bare_height_ratio = 0.0;
  double constant = 50.0;
  bool passed = false;
};

/// Transports every record of best_approx_seq(x, n, q_max) through phi_n(B)
/// and measures the approximation quality at (ax+b)/(cx+d). Records with
/// err(p) = 0 are skipped. Throws InvalidInput when |cx+d| < pole_tolerance.
TransportReport check_transport(const RealExpr& x, const Mat2& B, int n, long long q_max, double constant = 50.0,
                                double pole_tolerance = 1e-9);

}  // namespace veronese
