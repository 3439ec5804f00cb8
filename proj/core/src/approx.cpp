#include "veronese/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "veronese/errors.hpp"
#include "veronese/stats.hpp"

namespace veronese {

namespace {

using U128 = unsigned __int128;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Powers x^0..x^n, exact when x is rational.
struct Powers {
  std::vector<std::optional<Rational>> exact;
  std::vector<HighFloat> value;
  bool is_exact = false;
};

Powers powers_of(const RealExpr& x, int n) {
  Powers p;
  p.is_exact = x.exact().has_value();
  for (int i = 0; i <= n; ++i) {
    if (p.is_exact) {
      Rational r = ipow(*x.exact(), i);
      p.exact.push_back(r);
      p.value.push_back(HighFloat(numerator(r)) / HighFloat(denominator(r)));
    } else {
      p.exact.push_back(std::nullopt);
      p.value.push_back(boost::multiprecision::pow(x.value(), i));
    }
  }
  return p;
}

U128 to_u128(const BigInt& v) {
  const BigInt mask = (BigInt(1) << 64) - 1;
  const auto lo = static_cast<unsigned long long>(v & mask);
  const auto hi = static_cast<unsigned long long>((v >> 64) & mask);
  return (static_cast<U128>(hi) << 64) | lo;
}

// floor(f * 2^128) for f in [0, 1).
U128 fixed_of(const HighFloat& f) {
  HighFloat s = boost::multiprecision::ldexp(f, 64);
  HighFloat hi = boost::multiprecision::floor(s);
  HighFloat lo = boost::multiprecision::floor(boost::multiprecision::ldexp(HighFloat(s - hi), 64));
  return (static_cast<U128>(hi.convert_to<unsigned long long>()) << 64) | lo.convert_to<unsigned long long>();
}

U128 fractional_fixed(const Powers& p, int i) {
  const auto k = static_cast<std::size_t>(i);
  if (p.is_exact) {
    const Rational& r = *p.exact[k];
    const BigInt num = numerator(r), den = denominator(r);
    BigInt fl = num / den;
    if (num < 0 && fl * den != num) fl -= 1;
    const BigInt rem = num - fl * den;
    return to_u128((rem << 128) / den);
  }
  const HighFloat& v = p.value[k];
  return fixed_of(HighFloat(v - boost::multiprecision::floor(v)));
}

U128 distance_fixed(U128 acc) {
  U128 neg = static_cast<U128>(0) - acc;
  return std::min(acc, neg);
}

double fixed_to_double(U128 v) {
  return std::ldexp(static_cast<double>(static_cast<unsigned long long>(v >> 64)), -64) +
         std::ldexp(static_cast<double>(static_cast<unsigned long long>(v)), -128);
}

// Smallest resolvable distance at 1024 bits, relative to the magnitude.
const HighFloat& tiny() {
  static const HighFloat t = boost::multiprecision::ldexp(HighFloat(1), -960);
  return t;
}

struct Verified {
  IntVector q;
  std::optional<Rational> exact_err;
  HighFloat err;
  bool zero = false;
};

BigInt floor_rational(const Rational& r) {
  const BigInt num = numerator(r), den = denominator(r);
  BigInt fl = num / den;
  if (num < 0 && fl * den != num) fl -= 1;
  return fl;
}

Verified verify_simultaneous(const Powers& p, int n, long long q0) {
  Verified v;
  v.q.push_back(q0);
  v.err = 0;
  if (p.is_exact) v.exact_err = Rational(0);
  for (int i = 1; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (p.is_exact) {
      const Rational y = Rational(q0) * *p.exact[k];
      const BigInt near = floor_rational(y + Rational(1, 2));
      Rational e = y - Rational(near);
      if (e < 0) e = -e;
      v.q.push_back(near);
      if (e > *v.exact_err) v.exact_err = e;
    } else {
      const HighFloat y = HighFloat(q0) * p.value[k];
      const HighFloat near = boost::multiprecision::floor(y + HighFloat(0.5));
      HighFloat e = boost::multiprecision::abs(HighFloat(y - near));
      const HighFloat scale = boost::multiprecision::abs(y) + 1;
      // a half-integer tie has error 1/2 either way; floor(y + 1/2) is kept
      if (boost::multiprecision::abs(HighFloat(e - HighFloat(0.5))) < tiny() * scale) e = 0.5;
      if (e < tiny() * scale) e = 0;
      v.q.push_back(near.convert_to<BigInt>());
      if (e > v.err) v.err = e;
    }
  }
  if (p.is_exact) {
    v.err = HighFloat(numerator(*v.exact_err)) / HighFloat(denominator(*v.exact_err));
    v.zero = *v.exact_err == 0;
  } else {
    v.zero = v.err == 0;
  }
  return v;
}

bool strictly_better(const Verified& a, const Verified& b) {
  if (a.exact_err && b.exact_err) return *a.exact_err < *b.exact_err;
  return a.err < b.err;
}

double effective(double err, double scale) {
  if (scale <= 1.0) return kNaN;
  if (err <= 0) return std::numeric_limits<double>::infinity();
  return -std::log(err) / std::log(scale);
}

}  // namespace

std::vector<ApproxRecord> best_approx_seq(const RealExpr& x, int n, long long q_max) {
  if (n < 1) throw InvalidInput("best_approx_seq: n must be >= 1");
  if (q_max < 1) throw InvalidInput("best_approx_seq: q_max must be >= 1");
  const Powers p = powers_of(x, n);
  std::vector<U128> step(static_cast<std::size_t>(n) + 1, 0), acc(step.size(), 0);
  for (int i = 1; i <= n; ++i) step[static_cast<std::size_t>(i)] = fractional_fixed(p, i);

  std::vector<ApproxRecord> out;
  std::optional<Verified> best;
  U128 best_fixed = ~static_cast<U128>(0);
  for (long long q0 = 1; q0 <= q_max; ++q0) {
    U128 dist = 0;
    for (std::size_t i = 1; i < step.size(); ++i) {
      acc[i] += step[i];
      dist = std::max(dist, distance_fixed(acc[i]));
    }
    const U128 tol = static_cast<U128>(4) * static_cast<U128>(q0 + 1);
    if (best && dist > best_fixed && dist - best_fixed > tol) continue;
    Verified v = verify_simultaneous(p, n, q0);
    if (best && !strictly_better(v, *best)) continue;
    ApproxRecord r;
    r.q = v.q;
    r.err = static_cast<double>(v.err);
    r.exact_hit = v.zero;
    r.effective_exponent = effective(r.err, static_cast<double>(q0));
    out.push_back(std::move(r));
    best_fixed = v.err >= HighFloat(1) ? ~static_cast<U128>(0) : fixed_of(v.err);
    best = std::move(v);
    if (best->zero) break;
  }
  return out;
}

LambdaEstimate estimate_lambda(const std::vector<ApproxRecord>& records, long long q_max) {
  LambdaEstimate est;
  const double cutoff = std::pow(static_cast<double>(q_max), 0.25);
  std::vector<double> lx, ly;
  est.tail_max = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    if (r.exact_hit) {
      est.rational_hit = true;
      continue;
    }
    const double q0 = to_double(r.q.front());
    if (q0 <= cutoff) continue;
    lx.push_back(std::log(q0));
    ly.push_back(-std::log(r.err));
    est.tail_max = std::max(est.tail_max, r.effective_exponent);
  }
  est.tail_records = lx.size();
  if (est.rational_hit) {
    est.lambda = std::numeric_limits<double>::infinity();
    return est;
  }
  if (lx.empty()) throw InvalidInput("estimate_lambda: no records beyond q_max^(1/4)");
  est.lambda = lx.size() == 1 ? est.tail_max : fit_line(lx, ly).slope;
  return est;
}

LambdaEstimate estimate_lambda(const RealExpr& x, int n, long long q_max) {
  return estimate_lambda(best_approx_seq(x, n, q_max), q_max);
}

namespace {

struct DualCandidate {
  U128 dist;
  IntVector a;
};

HighFloat dual_value(const Powers& p, const IntVector& a, std::optional<Rational>& exact) {
  if (p.is_exact) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * *p.exact[i];
    if (s < 0) s = -s;
    exact = s;
    return HighFloat(numerator(s)) / HighFloat(denominator(s));
  }
  HighFloat s = 0, mag = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += HighFloat(a[i]) * p.value[i];
    mag += boost::multiprecision::abs(HighFloat(HighFloat(a[i]) * p.value[i]));
  }
  s = boost::multiprecision::abs(s);
  if (s < tiny() * (mag + 1)) s = 0;
  return s;
}

}  // namespace

std::vector<DualRecord> dual_best(const RealExpr& x, int n, long long a_max, double budget) {
  if (n < 1) throw InvalidInput("dual_best: n must be >= 1");
  if (a_max < 1) throw InvalidInput("dual_best: a_max must be >= 1");
  const double cells = std::pow(2.0 * static_cast<double>(a_max) + 1.0, n) / 2.0;
  if (cells > budget) throw BudgetExceeded("dual_best: search exceeds budget", cells, budget);

  const Powers p = powers_of(x, n);
  const auto len = static_cast<std::size_t>(n) + 1;
  std::vector<U128> frac(len, 0);
  std::vector<long long> whole(len, 0);
  std::vector<long double> frac_ld(len, 0);
  double whole_sum = 0;
  for (int i = 1; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    frac[k] = fractional_fixed(p, i);
    const HighFloat fl = boost::multiprecision::floor(p.value[k]);
    if (boost::multiprecision::abs(fl) > HighFloat(1e15)) throw InvalidInput("dual_best: |x|^n too large");
    whole[k] = fl.convert_to<long long>();
    frac_ld[k] = static_cast<long double>(fixed_to_double(frac[k]));
    whole_sum += std::fabs(static_cast<double>(whole[k]));
  }
  if (whole_sum * static_cast<double>(a_max) > 1e17) throw InvalidInput("dual_best: |x|^n too large for a_max");

  std::map<long long, std::vector<DualCandidate>> pending;
  std::map<long long, U128> pending_min;
  std::vector<DualRecord> out;
  std::optional<HighFloat> best;
  std::optional<Rational> best_exact;
  std::vector<long long> a(len, 0);

  auto consider = [&](long long s) {
    std::size_t first = 1;
    while (first < len && a[first] == 0) ++first;
    if (first == len || a[first] < 0) return;
    U128 acc = 0;
    long double sum = 0;
    long long base = 0;
    long long l1 = 0;
    for (std::size_t i = 1; i < len; ++i) {
      acc += static_cast<U128>(static_cast<__int128>(a[i])) * frac[i];
      sum += static_cast<long double>(a[i]) * frac_ld[i];
      base += a[i] * whole[i];
      l1 += std::llabs(a[i]);
    }
    const long double phi = static_cast<long double>(fixed_to_double(acc));
    const long long floor_sum = std::llround(sum - phi);
    const U128 half = static_cast<U128>(1) << 127;
    const long long nearest = base + floor_sum + (acc >= half ? 1 : 0);
    const long long a0 = -nearest;
    const long long h = std::max(s, std::llabs(a0));
    if (h > a_max) return;
    const U128 dist = distance_fixed(acc);
    const U128 tol = static_cast<U128>(8) * static_cast<U128>(l1 + 2);
    auto it = pending_min.find(h);
    if (it != pending_min.end() && dist > it->second && dist - it->second > tol) return;
    if (it == pending_min.end() || dist < it->second) pending_min[h] = dist;
    IntVector full(len);
    full[0] = a0;
    for (std::size_t i = 1; i < len; ++i) full[i] = a[i];
    pending[h].push_back({dist, std::move(full)});
  };

  auto finalize = [&](long long h) -> bool {
    auto it = pending.find(h);
    if (it == pending.end()) return false;
    const U128 lo = pending_min[h];
    std::optional<HighFloat> shell_best;
    std::optional<Rational> shell_exact;
    IntVector shell_a;
    for (const auto& c : it->second) {
      if (c.dist > lo && c.dist - lo > static_cast<U128>(8) * static_cast<U128>(len * static_cast<std::size_t>(h) + 2)) continue;
      std::optional<Rational> ex;
      HighFloat v = dual_value(p, c.a, ex);
      bool better;
      if (!shell_best) better = true;
      else if (ex && shell_exact) better = *ex < *shell_exact || (*ex == *shell_exact && c.a < shell_a);
      else better = v < *shell_best || (v == *shell_best && c.a < shell_a);
      if (better) {
        shell_best = v;
        shell_exact = ex;
        shell_a = c.a;
      }
    }
    pending.erase(it);
    pending_min.erase(h);
    if (!shell_best) return false;
    bool improves;
    if (!best) improves = true;
    else if (shell_exact && best_exact) improves = *shell_exact < *best_exact;
    else improves = *shell_best < *best;
    if (!improves) return false;
    best = shell_best;
    best_exact = shell_exact;
    DualRecord r;
    r.a = shell_a;
    r.value = static_cast<double>(*shell_best);
    r.algebraic_hit = shell_exact ? *shell_exact == 0 : *shell_best == 0;
    r.effective_exponent = effective(r.value, static_cast<double>(h));
    out.push_back(std::move(r));
    return out.back().algebraic_hit;
  };

  for (long long s = 1; s <= a_max; ++s) {
    // Vectors (a_1..a_n) with sup norm exactly s: j is the first index at +-s.
    for (std::size_t j = 1; j < len; ++j) {
      std::vector<long long> lo(len, 0), hi(len, 0);
      for (std::size_t i = 1; i < len; ++i) {
        if (i < j) {
          lo[i] = -(s - 1);
          hi[i] = s - 1;
        } else if (i > j) {
          lo[i] = -s;
          hi[i] = s;
        }
      }
      for (long long sign : {1LL, -1LL}) {
        for (std::size_t i = 1; i < len; ++i) a[i] = i == j ? sign * s : lo[i];
        for (;;) {
          consider(s);
          std::size_t pos = 1;
          while (pos < len && (pos == j || a[pos] == hi[pos])) {
            if (pos != j) a[pos] = lo[pos];
            ++pos;
          }
          if (pos == len) break;
          ++a[pos];
        }
      }
    }
    if (finalize(s)) return out;
  }
  return out;
}

TransportReport check_transport(const RealExpr& x, const Mat2& B, int n, long long q_max, double constant,
                                double pole_tolerance) {
  if (n < 1) throw InvalidInput("check_transport: n must be >= 1");
  const HighFloat cxd = HighFloat(B.c) * x.value() + HighFloat(B.d);
  const HighFloat cxd_abs = boost::multiprecision::abs(cxd);
  if (cxd_abs < HighFloat(pole_tolerance))
    throw InvalidInput("check_transport: x is within " + std::to_string(pole_tolerance) + " of the pole of " +
                       B.to_string());
  const RealExpr y = x.mobius(B);
  std::vector<HighFloat> ypow;
  for (int i = 0; i <= n; ++i) ypow.push_back(boost::multiprecision::pow(y.value(), i));
  const double norm_n = std::pow(to_double(B.norm()), n);
  const double pole_n = std::pow(static_cast<double>(cxd_abs), n);

  TransportReport report;
  report.constant = constant;
  for (const auto& rec : best_approx_seq(x, n, q_max)) {
    if (rec.exact_hit || rec.err == 0) continue;
    TransportRow row;
    row.p = rec.q;
    row.q = transport_approx(B, rec.q);
    row.err_p = rec.err;
    HighFloat err_q = 0;
    const HighFloat q0(row.q[0]);
    for (int i = 1; i <= n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      HighFloat e = boost::multiprecision::abs(HighFloat(q0 * ypow[k] - HighFloat(row.q[k])));
      if (e > err_q) err_q = e;
    }
    row.err_q = static_cast<double>(err_q);
    const double p0 = to_double(rec.q[0]);
    const double q0_abs = std::fabs(to_double(row.q[0]));
    row.error_ratio = row.err_q / (norm_n * row.err_p);
    row.height_ratio = q0_abs / (pole_n * p0 + norm_n * row.err_p);
    row.bare_height_ratio = q0_abs / (pole_n * p0);
    report.max_error_ratio = std::max(report.max_error_ratio, row.error_ratio);
    report.max_height_ratio = std::max(report.max_height_ratio, row.height_ratio);
    report.max_bare_height_ratio = std::max(report.max_bare_height_ratio, row.bare_height_ratio);
    report.rows.push_back(std::move(row));
  }
  report.passed = report.max_error_ratio <= constant && report.max_height_ratio <= constant;
  return report;
}

std::vector<DecadeCheck> dirichlet_decades(const std::vector<ApproxRecord>& records, int n, long long q_max,
                                           double slack) {
  if (n < 1) throw InvalidInput("dirichlet_decades: n must be >= 1");
  std::vector<DecadeCheck> out;
  for (long long low = 1; low <= q_max; low = low > q_max / 10 ? q_max + 1 : low * 10) {
    DecadeCheck c;
    c.low = low;
    c.top = low > q_max / 10 ? q_max : std::min(q_max, low * 10 - 1);
    c.bound = std::pow(static_cast<double>(c.top), -1.0 / n + slack);
    const ApproxRecord* best = nullptr;
    for (const auto& r : records)
      if (r.q[0] <= c.top && (!best || r.err < best->err)) best = &r;
    if (best) {
      c.q = best->q;
      c.err = best->err;
      c.ok = c.err <= c.bound;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace veronese
