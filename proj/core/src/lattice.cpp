#include "veronese/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <limits>
#include <optional>

#include "veronese/errors.hpp"

namespace veronese {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

long double to_ld(const Rational& r) {
  return static_cast<long double>(to_double(r));
}

long double power_ld(const Rational& base, const Rational& exponent) {
  return std::pow(to_ld(base), to_ld(exponent));
}

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

double ScaledRational::to_double(const Rational& base) const {
  return static_cast<double>(to_ld(coefficient) * power_ld(base, exponent));
}

std::string ScaledRational::to_string() const {
  return veronese::to_string(coefficient) + "*Q^(" + veronese::to_string(exponent) + ")";
}

int compare(const ScaledRational& x, const ScaledRational& y, const Rational& base) {
  const bool xz = x.coefficient == 0, yz = y.coefficient == 0;
  if (xz || yz) return xz && yz ? 0 : (xz ? -1 : 1);
  // x < y  <=>  (cx / cy)^v < base^u  where ey - ex = u / v, v > 0.
  const Rational t = y.exponent - x.exponent;
  const BigInt u = numerator(t);
  const BigInt v = denominator(t);
  if (!fits_int64(u) || !fits_int64(v) || v > 4096 || abs(u) > 4096)
    throw InvalidInput("compare: exponent difference too complex for exact comparison");
  const Rational lhs = ipow(Rational(x.coefficient / y.coefficient), static_cast<int>(v));
  const Rational rhs = ipow(base, static_cast<int>(u));
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

ScaledRational LinearBox::volume() const {
  Rational coef = 1;
  Rational expo = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    coef *= 2 * radii[i].coefficient / rabs(rows[i][i]);
    expo += radii[i].exponent;
  }
  return {coef, expo};
}

ScaledRational LinearBox::gauge(const IntVector& v) const {
  if (v.size() != rows.size()) throw InvalidInput("gauge: dimension mismatch");
  ScaledRational best{0, 0};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j <= i; ++j) s += rows[i][j] * v[j];
    ScaledRational g{rabs(s) / radii[i].coefficient, -radii[i].exponent};
    if (compare(g, best, base) > 0) best = g;
  }
  return best;
}

LinearBox BoxSpec::box() const {
  if (n < 1) throw InvalidInput("box: n must be >= 1");
  if (Q <= 1) throw InvalidInput("box: Q must exceed 1");
  if (lambda <= 0) throw InvalidInput("box: lambda must be positive");
  LinearBox b;
  b.base = Q;
  const auto d = static_cast<std::size_t>(n) + 1;
  b.rows.assign(d, std::vector<Rational>(d, Rational(0)));
  b.rows[0][0] = 1;
  b.radii.push_back({1, 1});
  b.rows[1][0] = x0;
  b.rows[1][1] = -1;
  b.radii.push_back({1, (1 - lambda) / 2});
  for (int i = 2; i <= n; ++i) {
    auto& r = b.rows[static_cast<std::size_t>(i)];
    r[0] = (1 - i) * ipow(x0, i);
    r[1] = i * ipow(x0, i - 1);
    r[static_cast<std::size_t>(i)] = -1;
    b.radii.push_back({1, -lambda});
  }
  return b;
}

std::vector<double> MinimaResult::tau_values() const {
  std::vector<double> out;
  for (const auto& t : taus) out.push_back(t.to_double(base));
  return out;
}

namespace {

using Real = long double;

struct Candidate {
  std::vector<long long> v;
  Real approx = 0;
  Real euclid = 0;
};

// Box rows divided by their radii: v lies in t * box iff |A v|_inf <= t.
std::vector<std::vector<Real>> scaled_rows(const LinearBox& box) {
  const std::size_t d = box.dimension();
  std::vector<std::vector<Real>> a(d, std::vector<Real>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    const Real w = to_ld(box.radii[i].coefficient) * power_ld(box.base, box.radii[i].exponent);
    for (std::size_t j = 0; j <= i; ++j) a[i][j] = to_ld(box.rows[i][j]) / w;
  }
  return a;
}

Real approx_gauge(const std::vector<std::vector<Real>>& a, const std::vector<long long>& v) {
  Real g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Real s = 0;
    for (std::size_t j = 0; j <= i; ++j) s += a[i][j] * static_cast<Real>(v[j]);
    g = std::max(g, std::fabs(s));
  }
  return g;
}

Real dot_ld(const std::vector<Real>& x, const std::vector<Real>& y) {
  Real s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// LLL on the columns of a; returns the integer transforms (one per reduced
// vector) and the reduced real vectors.
struct Reduced {
  std::vector<std::vector<long long>> u;
  std::vector<std::vector<Real>> b;
};

Reduced lll(const std::vector<std::vector<Real>>& a) {
  const std::size_t d = a.size();
  Reduced r;
  r.u.assign(d, std::vector<long long>(d, 0));
  r.b.assign(d, std::vector<Real>(d, 0));
  for (std::size_t k = 0; k < d; ++k) {
    r.u[k][k] = 1;
    for (std::size_t i = 0; i < d; ++i) r.b[k][i] = a[i][k];
  }
  auto& b = r.b;
  std::vector<std::vector<Real>> bs(d), mu(d, std::vector<Real>(d, 0));
  std::vector<Real> norm(d);
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < d; ++i) {
      bs[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot_ld(b[i], bs[j]) / norm[j];
        for (std::size_t t = 0; t < d; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      norm[i] = dot_ld(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  int guard = 0;
  while (k < d && ++guard < 100000) {
    for (std::size_t j = k; j-- > 0;) {
      const Real q = std::round(mu[k][j]);
      if (q == 0) continue;
      const auto qi = static_cast<long long>(q);
      for (std::size_t t = 0; t < d; ++t) {
        b[k][t] -= q * b[j][t];
        r.u[k][t] -= qi * r.u[j][t];
      }
      gram_schmidt();
    }
    if (norm[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(r.u[k], r.u[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return r;
}

struct Orthogonal {
  std::vector<std::vector<Real>> mu;
  std::vector<Real> norm;
};

Orthogonal gram_schmidt(const std::vector<std::vector<Real>>& b) {
  const std::size_t d = b.size();
  Orthogonal g;
  g.mu.assign(d, std::vector<Real>(d, 0));
  g.norm.assign(d, 0);
  std::vector<std::vector<Real>> bs(d);
  for (std::size_t i = 0; i < d; ++i) {
    bs[i] = b[i];
    for (std::size_t j = 0; j < i; ++j) {
      g.mu[i][j] = dot_ld(b[i], bs[j]) / g.norm[j];
      for (std::size_t s = 0; s < d; ++s) bs[i][s] -= g.mu[i][j] * bs[j][s];
    }
    g.norm[i] = dot_ld(bs[i], bs[i]);
  }
  return g;
}

// Rows of an integer basis orthogonal to the witnesses; v lies in their span
// iff every row annihilates v.
class SpanTest {
 public:
  explicit SpanTest(std::size_t d) {
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, 0);
      e[i] = 1;
      rows_.push_back(std::move(e));
    }
    narrow();
  }

  void reset(const std::vector<IntVector>& witnesses) {
    rows_ = integer_kernel(IntMatrix::from_rows(witnesses));
    narrow();
  }

  bool contains(const std::vector<long long>& v) const {
    const std::vector<long long> zero(v.size(), 0);
    return fiber(v, zero).all_inside;
  }

  struct Fiber {
    bool all_inside = false;
    /// the one y with w + y u in the span
    std::optional<long long> excluded;
  };

  Fiber fiber(const std::vector<long long>& w, const std::vector<long long>& u) const {
    if (small_) return solve<__int128>(w, u, narrow_rows_);
    return solve<BigInt>(w, u, rows_);
  }

 private:
  template <class T, class Rows>
  static Fiber solve(const std::vector<long long>& w, const std::vector<long long>& u, const Rows& rows) {
    std::vector<T> kw, ku;
    for (const auto& r : rows) {
      T sw = 0, su = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        sw += T(r[i]) * T(w[i]);
        su += T(r[i]) * T(u[i]);
      }
      kw.push_back(sw);
      ku.push_back(su);
    }
    Fiber f;
    std::size_t pivot = ku.size();
    for (std::size_t i = 0; i < ku.size(); ++i)
      if (ku[i] != 0) pivot = i;
    if (pivot == ku.size()) {
      f.all_inside = std::all_of(kw.begin(), kw.end(), [](const T& x) { return x == 0; });
      return f;
    }
    if (kw[pivot] % ku[pivot] != 0) return f;
    const T y = -kw[pivot] / ku[pivot];
    for (std::size_t i = 0; i < ku.size(); ++i)
      if (kw[i] + y * ku[i] != 0) return f;
    if (y > T(std::numeric_limits<long long>::max()) || y < T(std::numeric_limits<long long>::min())) return f;
    f.excluded = static_cast<long long>(y);
    return f;
  }

  void narrow() {
    small_ = true;
    narrow_rows_.clear();
    for (const auto& r : rows_) {
      std::vector<long long> row;
      for (const auto& x : r) {
        if (!fits_int64(x) || abs(x) > (BigInt(1) << 40)) small_ = false;
        row.push_back(small_ ? static_cast<long long>(x) : 0);
      }
      narrow_rows_.push_back(std::move(row));
    }
  }

  std::vector<IntVector> rows_;
  std::vector<std::vector<long long>> narrow_rows_;
  bool small_ = true;
};

// One point of smallest approximate gauge outside the current span, per
// fiber {w + y u0 : y in Z} along the shortest reduced vector u0. Fibers are
// enumerated by Fincke-Pohst on the remaining reduced coordinates inside the
// ball of radius t sqrt(d), t the best gauge so far.
class NextMinimum {
 public:
  NextMinimum(const std::vector<std::vector<Real>>& a, const Reduced& red, const Orthogonal& gs, const SpanTest& span,
              double budget, std::size_t& examined)
      : a_(a), red_(red), gs_(gs), span_(span), d_(a.size()), budget_(budget), examined_(examined) {}

  std::vector<Candidate> run(Real bound) {
    set_best(bound);
    y_.assign(d_, 0);
    if (d_ == 1) {
      leaf();
    } else {
      rec(d_ - 1, 0);
    }
    std::vector<Candidate> out;
    for (auto& c : picks_)
      if (c.approx <= best_ * tie_) out.push_back(std::move(c));
    return out;
  }

 private:
  static constexpr Real slack_ = 1 + 1e-9L;
  static constexpr Real tie_ = 1 + 1e-12L;
  static constexpr Real far_ = 1e15L;

  void set_best(Real t) {
    best_ = t;
    r2_ = static_cast<Real>(d_) * t * t * slack_ * slack_;
  }

  void rec(std::size_t k, Real used) {
    Real c = 0;
    for (std::size_t j = k + 1; j < d_; ++j) c -= static_cast<Real>(y_[j]) * gs_.mu[j][k];
    const Real room = std::sqrt(std::max<Real>(0, (r2_ - used) / gs_.norm[k]));
    const auto lo = static_cast<long long>(std::ceil(c - room - 1e-12L));
    const auto hi = static_cast<long long>(std::floor(c + room + 1e-12L));
    bool zero_tail = true;
    for (std::size_t j = k + 1; j < d_; ++j) zero_tail = zero_tail && y_[j] == 0;
    for (long long x = zero_tail ? std::max(lo, 0LL) : lo; x <= hi; ++x) {
      const Real diff = static_cast<Real>(x) - c;
      const Real next = used + diff * diff * gs_.norm[k];
      if (next > r2_) continue;
      y_[k] = x;
      if (k > 1) {
        rec(k - 1, next);
      } else {
        leaf();
      }
    }
    y_[k] = 0;
  }

  void leaf() {
    if (static_cast<double>(++examined_) > budget_)
      throw BudgetExceeded("successive_minima: enumeration budget exceeded", static_cast<double>(examined_), budget_);
    const auto& u = red_.u[0];
    std::vector<long long> w(d_, 0);
    for (std::size_t j = 1; j < d_; ++j)
      for (std::size_t i = 0; i < d_; ++i) w[i] += y_[j] * red_.u[j][i];
    const auto fiber = span_.fiber(w, u);
    if (fiber.all_inside) return;

    std::vector<Real> c(d_, 0), s(d_, 0);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        c[i] += a_[i][j] * static_cast<Real>(w[j]);
        s[i] += a_[i][j] * static_cast<Real>(u[j]);
      }
    auto g = [&](Real y) {
      Real m = 0;
      for (std::size_t i = 0; i < d_; ++i) m = std::max(m, std::fabs(c[i] + y * s[i]));
      return m;
    };

    // The real minimum of the convex function g sits at a breakpoint.
    std::vector<Real> breaks;
    auto push = [&](Real num, Real den) {
      if (den == 0) return;
      const Real x = -num / den;
      if (std::fabs(x) < far_) breaks.push_back(x);
    };
    for (std::size_t i = 0; i < d_; ++i) {
      push(c[i], s[i]);
      for (std::size_t j = i + 1; j < d_; ++j) {
        push(c[i] - c[j], s[i] - s[j]);
        push(c[i] + c[j], s[i] + s[j]);
      }
    }
    Real low = std::numeric_limits<Real>::infinity();
    for (Real x : breaks) low = std::min(low, g(x));
    if (low > best_ * tie_) return;

    std::vector<long long> ys;
    Real flat_lo = std::numeric_limits<Real>::infinity(), flat_hi = -flat_lo;
    for (Real x : breaks) {
      if (g(x) > low * tie_) continue;
      flat_lo = std::min(flat_lo, x);
      flat_hi = std::max(flat_hi, x);
      const auto f = static_cast<long long>(std::floor(x));
      for (long long k = f - 1; k <= f + 2; ++k) ys.push_back(k);
    }
    // on a flat bottom prefer the point nearest the orthogonal projection
    const auto flat_first = static_cast<long long>(std::ceil(flat_lo));
    const auto flat_last = static_cast<long long>(std::floor(flat_hi));
    if (flat_first <= flat_last) {
      const Real proj = -dot_ld(c, s) / dot_ld(s, s);
      ys.push_back(std::clamp(static_cast<long long>(std::llround(std::clamp(proj, -far_, far_))), flat_first, flat_last));
    }
    if (fiber.excluded) {
      const long long e = *fiber.excluded;
      ys.push_back(e - 1);
      ys.push_back(e + 1);
      ys.erase(std::remove(ys.begin(), ys.end(), e), ys.end());
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    Real fmin = std::numeric_limits<Real>::infinity();
    for (long long y : ys) fmin = std::min(fmin, g(static_cast<Real>(y)));
    if (fmin > best_ * tie_) return;
    for (long long y : ys) {
      const Real gy = g(static_cast<Real>(y));
      if (gy > fmin * tie_) continue;
      Candidate cand;
      cand.v.resize(d_);
      for (std::size_t i = 0; i < d_; ++i) cand.v[i] = w[i] + y * u[i];
      cand.approx = gy;
      cand.euclid = 0;
      for (std::size_t i = 0; i < d_; ++i) cand.euclid += (c[i] + y * s[i]) * (c[i] + y * s[i]);
      picks_.push_back(std::move(cand));
    }
    if (fmin < best_) {
      set_best(fmin);
      std::erase_if(picks_, [&](const Candidate& x) { return x.approx > best_ * tie_; });
    }
  }

  const std::vector<std::vector<Real>>& a_;
  const Reduced& red_;
  const Orthogonal& gs_;
  const SpanTest& span_;
  std::size_t d_;
  double budget_;
  std::size_t& examined_;
  std::vector<long long> y_;
  Real best_ = 0;
  Real r2_ = 0;
  std::vector<Candidate> picks_;
};

IntVector to_int_vector(const std::vector<long long>& v) { return IntVector(v.begin(), v.end()); }

// Row i of the box as integers n_i / den_i; gauge_i(v) = |n_i . v| * scale_i.
struct IntegerRows {
  bool usable = true;
  std::vector<std::vector<long long>> n;
  std::vector<ScaledRational> scale;
  std::vector<Real> approx_scale;

  explicit IntegerRows(const LinearBox& box) {
    const std::size_t d = box.dimension();
    n.assign(d, std::vector<long long>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      BigInt den = 1;
      for (std::size_t j = 0; j <= i; ++j) den = boost::multiprecision::lcm(den, denominator(box.rows[i][j]));
      for (std::size_t j = 0; j <= i; ++j) {
        const BigInt x = numerator(box.rows[i][j]) * (den / denominator(box.rows[i][j]));
        if (!fits_int64(x) || abs(x) > (BigInt(1) << 40)) usable = false;
        else n[i][j] = static_cast<long long>(x);
      }
      scale.push_back({Rational(1) / (Rational(den) * box.radii[i].coefficient), -box.radii[i].exponent});
      approx_scale.push_back(static_cast<Real>(scale.back().to_double(box.base)));
    }
  }

  // (row, |n_row . v|) for every row that may attain the gauge
  std::vector<std::pair<std::size_t, __int128>> top_rows(const std::vector<long long>& v) const {
    const std::size_t d = n.size();
    std::vector<__int128> sums(d);
    std::vector<Real> g(d);
    Real top = 0;
    for (std::size_t i = 0; i < d; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j <= i; ++j) s += static_cast<__int128>(n[i][j]) * v[j];
      sums[i] = s < 0 ? -s : s;
      g[i] = static_cast<Real>(sums[i]) * approx_scale[i];
      top = std::max(top, g[i]);
    }
    std::vector<std::pair<std::size_t, __int128>> out;
    for (std::size_t i = 0; i < d; ++i)
      if (g[i] >= top * (1 - 1e-9L)) out.emplace_back(i, sums[i]);
    return out;
  }

  ScaledRational exact(const std::vector<std::pair<std::size_t, __int128>>& rows, const Rational& base) const {
    ScaledRational best{0, 0};
    for (const auto& [i, s] : rows) {
      ScaledRational g = scale[i];
      g.coefficient *= Rational(BigInt(static_cast<long long>(s)));
      if (compare(g, best, base) > 0) best = g;
    }
    return best;
  }
};

}  // namespace

MinimaResult successive_minima(const LinearBox& box, const Rational& dilation_cap, const MinimaOptions& options) {
  const std::size_t d = box.dimension();
  if (d == 0 || box.radii.size() != d) throw InvalidInput("successive_minima: malformed box");
  for (std::size_t i = 0; i < d; ++i) {
    if (box.rows[i].size() != d || box.rows[i][i] == 0) throw InvalidInput("successive_minima: rows must be lower triangular");
    if (box.radii[i].coefficient <= 0) throw InvalidInput("successive_minima: radii must be positive");
  }
  if (dilation_cap <= 0) throw InvalidInput("successive_minima: dilation cap must be positive");

  MinimaResult result;
  result.base = box.base;
  result.volume = box.volume();
  const auto a = scaled_rows(box);
  const Reduced red = lll(a);
  const Orthogonal gs = gram_schmidt(red.b);
  const IntegerRows irows(box);
  const ScaledRational cap{dilation_cap, 0};
  const Real cap_ld = to_ld(dilation_cap);
  auto exact_gauge = [&](const std::vector<long long>& v) {
    return irows.usable ? irows.exact(irows.top_rows(v), box.base) : box.gauge(to_int_vector(v));
  };

  SpanTest span(d);
  std::size_t examined = 0;
  bool capped = false;
  while (result.witnesses.size() < d) {
    // a reduced vector outside the span bounds the next minimum
    Real t = std::numeric_limits<Real>::infinity();
    for (const auto& u : red.u)
      if (!span.contains(u)) t = std::min(t, approx_gauge(a, u));
    if (t > cap_ld) {
      t = cap_ld;
      capped = true;
    }
    NextMinimum search(a, red, gs, span, options.budget, examined);
    auto picks = search.run(t);

    std::optional<std::pair<Candidate, ScaledRational>> best;
    for (auto& p : picks) {
      const auto first = std::find_if(p.v.begin(), p.v.end(), [](long long x) { return x != 0; });
      if (first != p.v.end() && *first < 0)
        for (auto& x : p.v) x = -x;
      ScaledRational g = exact_gauge(p.v);
      if (compare(g, cap, box.base) > 0) continue;
      if (best) {
        const int cmp = compare(g, best->second, box.base);
        if (cmp > 0) continue;
        if (cmp == 0 && (p.euclid > best->first.euclid || (p.euclid == best->first.euclid && p.v >= best->first.v)))
          continue;
      }
      best.emplace(std::move(p), std::move(g));
    }
    if (!best) break;
    result.witnesses.push_back(to_int_vector(best->first.v));
    result.taus.push_back(best->second);
    span.reset(result.witnesses);
  }
  result.points_examined = examined;
  if (result.witnesses.size() < d) {
    if (!capped) throw InvalidInput("successive_minima: enumeration lost precision");
    throw MinimaIncomplete("successive_minima: dilation cap reached with " + std::to_string(result.witnesses.size()) +
                               " of " + std::to_string(d) + " minima",
                           result);
  }

  ScaledRational product = result.volume;
  for (const auto& tau : result.taus) {
    product.coefficient *= tau.coefficient;
    product.exponent += tau.exponent;
  }
  const Rational upper = ipow(Rational(2), static_cast<int>(d));
  const Rational lower = upper / Rational(factorial(d));
  result.minkowski_lower = compare(product, {lower, 0}, box.base) >= 0;
  result.minkowski_upper = compare(product, {upper, 0}, box.base) <= 0;
  result.product = product.to_double(box.base);
  return result;
}

MinimaResult successive_minima(const BoxSpec& spec, const Rational& dilation_cap, const MinimaOptions& options) {
  return successive_minima(spec.box(), dilation_cap, options);
}

SubspaceHeight subspace_height(const std::vector<IntVector>& vs) {
  if (vs.empty()) throw InvalidInput("subspace_height: no vectors");
  for (const auto& v : vs) {
    if (v.size() != vs.front().size()) throw InvalidInput("subspace_height: ragged vectors");
    if (std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; }))
      throw InvalidInput("subspace_height: zero vector");
  }
  IntMatrix m = IntMatrix::from_rows(vs);
  if (rank(m) < vs.size()) {
    auto kernel = integer_kernel(m.transpose());
    throw DependentVectors("subspace_height: vectors are linearly dependent", kernel.front());
  }
  SubspaceHeight h;
  h.gram_determinant = determinant(gram(vs));
  h.height = std::sqrt(to_double(h.gram_determinant));
  return h;
}

SubspaceHeight saturated_height(const std::vector<IntVector>& vs) {
  return subspace_height(saturate(vs));
}

std::vector<IntVector> points_in_cube(const std::vector<IntVector>& vs, long long bound) {
  if (bound < 0) throw InvalidInput("points_in_cube: bound must be >= 0");
  std::vector<IntVector> nonzero;
  for (const auto& v : vs)
    if (std::any_of(v.begin(), v.end(), [](const BigInt& x) { return x != 0; })) nonzero.push_back(v);
  if (nonzero.empty()) return {};
  const auto basis = saturate(nonzero);
  if (basis.empty()) return {};
  const std::size_t k = basis.size();
  const std::size_t d = basis.front().size();

  // k coordinates on which the basis is injective
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < d && pivots.size() < k; ++j) {
    auto trial = pivots;
    trial.push_back(j);
    IntMatrix m(k, trial.size());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < trial.size(); ++c) m(i, c) = basis[i][trial[c]];
    if (rank(m) == trial.size()) pivots = trial;
  }

  // inverse of the k x k pivot block, as rationals
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k, 0));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = Rational(basis[c][pivots[r]]);
    a[r][k + r] = 1;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[c], a[piv]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * k; ++j) a[r][j] -= f * a[c][j];
    }
  }

  std::vector<IntVector> out;
  std::vector<long long> y(k, -bound);
  for (;;) {
    IntVector coeff(k);
    bool integral = true;
    for (std::size_t i = 0; i < k && integral; ++i) {
      Rational s = 0;
      for (std::size_t r = 0; r < k; ++r) s += a[i][k + r] * y[r];
      if (denominator(s) != 1) integral = false;
      else coeff[i] = numerator(s);
    }
    if (integral) {
      IntVector v(d, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < d; ++j) v[j] += coeff[i] * basis[i][j];
      if (max_abs(v) <= bound) out.push_back(std::move(v));
    }
    std::size_t i = 0;
    while (i < k && y[i] == bound) y[i++] = -bound;
    if (i == k) break;
    ++y[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix hankel(const IntVector& q, int h) {
  const int n = static_cast<int>(q.size()) - 1;
  if (h < 0 || h > n) throw InvalidInput("hankel: need 0 <= h <= n");
  IntMatrix m(static_cast<std::size_t>(h) + 1, static_cast<std::size_t>(n - h) + 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = q[i + j];
  return m;
}

TypeResult type_of(const IntVector& q) {
  if (q.empty() || std::all_of(q.begin(), q.end(), [](const BigInt& x) { return x == 0; }))
    throw InvalidInput("type_of: q must be nonzero");
  const int n = static_cast<int>(q.size()) - 1;
  TypeResult r;
  bool gap = false;
  for (int h = 0; 2 * h <= n; ++h) {
    const std::size_t rk = rank(hankel(q, h));
    r.ranks.push_back(rk);
    if (rk == static_cast<std::size_t>(h) + 1) {
      if (gap) r.monotone = false;
      r.type = h;
    } else {
      gap = true;
    }
  }
  return r;
}

namespace {

// Prefers smaller sup norm, then smaller l1 norm, then lexicographically larger.
bool better_orthogonal(const IntVector& x, const IntVector& y) {
  const BigInt sx = max_abs(x), sy = max_abs(y);
  if (sx != sy) return sx < sy;
  BigInt lx = 0, ly = 0;
  for (const auto& v : x) lx += abs(v);
  for (const auto& v : y) ly += abs(v);
  if (lx != ly) return lx < ly;
  return x > y;
}

}  // namespace

OrthogonalVector small_orthogonal_vector(const IntVector& q_in, double bound_slack, double budget) {
  if (q_in.size() < 2) throw InvalidInput("small_orthogonal_vector: need length >= 2");
  if (!(bound_slack >= 1.0)) throw InvalidInput("small_orthogonal_vector: slack must be >= 1");
  BigInt g = 0;
  for (const auto& v : q_in) g = gcd(g, v);
  if (g == 0) throw InvalidInput("small_orthogonal_vector: q must be nonzero");
  IntVector q = q_in;
  for (auto& v : q) v /= g;

  const std::size_t len = q.size();
  const double n = static_cast<double>(len - 1);
  const double scale = std::pow(to_double(max_abs(q)), 1.0 / n);
  std::size_t k = 0;
  for (std::size_t i = 1; i < len; ++i)
    if (abs(q[i]) > abs(q[k])) k = i;

  long long bound = std::max(1LL, static_cast<long long>(std::floor(bound_slack * scale + 1e-9)));
  for (;;) {
    const double cells = std::pow(2.0 * static_cast<double>(bound) + 1.0, n);
    if (cells > budget) throw BudgetExceeded("small_orthogonal_vector: search exceeds budget", cells, budget);
    std::vector<long long> others(len - 1, -bound);
    std::optional<IntVector> best;
    for (;;) {
      BigInt s = 0;
      for (std::size_t i = 0, o = 0; i < len; ++i) {
        if (i == k) continue;
        s += q[i] * others[o++];
      }
      if (s % q[k] == 0) {
        BigInt ak = -s / q[k];
        if (abs(ak) <= bound) {
          IntVector a(len);
          for (std::size_t i = 0, o = 0; i < len; ++i) a[i] = i == k ? ak : BigInt(others[o++]);
          auto nz = std::find_if(a.begin(), a.end(), [](const BigInt& x) { return x != 0; });
          if (nz != a.end()) {
            if (*nz < 0)
              for (auto& x : a) x = -x;
            if (!best || better_orthogonal(a, *best)) best = std::move(a);
          }
        }
      }
      std::size_t pos = 0;
      while (pos < others.size() && others[pos] == bound) others[pos++] = -bound;
      if (pos == others.size()) break;
      ++others[pos];
    }
    if (best) return {*best, static_cast<double>(bound) / scale};
    bound *= 2;
  }
}

}  // namespace veronese
