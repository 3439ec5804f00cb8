#include "veronese/polyarith.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "veronese/errors.hpp"
#include "veronese/intmat.hpp"

namespace veronese {

IntPoly::IntPoly(IntVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

const BigInt& IntPoly::leading() const {
  if (is_zero()) throw InvalidInput("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

IntVector IntPoly::as_form(int n) const {
  if (degree() > n) throw InvalidInput("polynomial degree exceeds form degree");
  IntVector out(static_cast<std::size_t>(n) + 1);
  std::copy(coeffs_.begin(), coeffs_.end(), out.begin());
  return out;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  IntVector d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (leading() < 0) g = -g;
  IntVector c = coeffs_;
  for (auto& x : c) x /= g;
  return IntPoly(std::move(c));
}

BigInt IntPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string IntPoly::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ']';
  return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  IntVector c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  IntVector c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(c));
}

IntPoly operator*(const BigInt& k, const IntPoly& p) {
  IntVector c = p.coeffs_;
  for (auto& x : c) x *= k;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-() const {
  IntVector c = coeffs_;
  for (auto& x : c) x = -x;
  return IntPoly(std::move(c));
}

BigInt height(const IntPoly& p) {
  if (p.is_zero()) throw InvalidInput("height of the zero polynomial");
  return max_abs(p.coeffs());
}

double HdValue::value() const { return std::pow(to_double(fourth_power), 0.25); }

HdValue height_d(const BigInt& c0, const BigInt& c1, const BigInt& c2, const BigInt& c3) {
  const BigInt a0 = abs(c0), a1 = abs(c1), a2 = abs(c2), a3 = abs(c3);
  const BigInt candidates[] = {
      ipow(a2, 4u),
      ipow(a3, 4u),
      ipow(BigInt(a1 * a2), 2u),
      a0 * ipow(a2, 3u),
      ipow(BigInt(a0 * a3), 2u),
      ipow(a1, 3u) * a3,
      a0 * a1 * a2 * a3,
  };
  return HdValue{*std::max_element(std::begin(candidates), std::end(candidates))};
}

HdValue height_d(const IntPoly& p) {
  if (p.is_zero()) throw InvalidInput("H_d of the zero polynomial");
  if (p.degree() > 3) throw InvalidInput("H_d is defined for degree <= 3");
  return height_d(p.coeff(0), p.coeff(1), p.coeff(2), p.coeff(3));
}

BigInt resultant(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) throw InvalidInput("resultant with the zero polynomial");
  const auto m = static_cast<std::size_t>(p.degree());
  const auto n = static_cast<std::size_t>(q.degree());
  const std::size_t size = m + n;
  IntMatrix s(size, size);
  // Rows 0..n-1 carry shifted copies of p, rows n..n+m-1 of q, highest
  // coefficient first.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s(r, r + k) = p.coeffs()[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s(n + r, r + k) = q.coeffs()[n - k];
  return determinant(std::move(s));
}

BigInt discriminant(const IntPoly& p) {
  const int n = p.degree();
  if (n < 2) throw InvalidInput("discriminant requires degree >= 2");
  BigInt r = resultant(p, p.derivative());
  BigInt d = r / p.leading();
  const long half = static_cast<long>(n) * (n - 1) / 2;
  return (half % 2) ? BigInt(-d) : d;
}

BigInt form_discriminant(const IntPoly& p, int n) {
  if (p.is_zero()) throw InvalidInput("discriminant of the zero form");
  if (n < 2) throw InvalidInput("form discriminant requires degree >= 2");
  const int d = p.degree();
  if (d > n) throw InvalidInput("polynomial degree exceeds form degree");
  if (d == n) return discriminant(p);
  if (d < n - 1) return 0;
  // One root at infinity.
  if (d == 1) return p.leading() * p.leading();
  return p.leading() * p.leading() * discriminant(p);
}

BigInt cubic_discriminant(const BigInt& c0, const BigInt& c1, const BigInt& c2, const BigInt& c3) {
  return c1 * c1 * c2 * c2 - 4 * c0 * c2 * c2 * c2 - 4 * c1 * c1 * c1 * c3 -
         27 * c0 * c0 * c3 * c3 + 18 * c0 * c1 * c2 * c3;
}

IntPoly shift(const IntPoly& p, const BigInt& j) {
  if (p.is_zero()) throw InvalidInput("shift of the zero polynomial");
  // Horner in Z[x]: acc = acc * (x + j) + c_i.
  IntPoly acc;
  const IntPoly lin(IntVector{j, BigInt(1)});
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = acc * lin + IntPoly(IntVector{*it});
  }
  return acc;
}

IntPoly reverse_scale(const IntPoly& p, const BigInt& scale, int n) {
  if (p.is_zero()) throw InvalidInput("reverse_scale of the zero polynomial");
  if (scale <= 0) throw InvalidInput("reverse_scale requires a positive scale");
  if (p.degree() > n) throw InvalidInput("reverse_scale: degree exceeds n");
  // (Cx)^n sum c_i (Cx)^{-i} = sum c_i C^{n-i} x^{n-i}
  IntVector out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    out[static_cast<std::size_t>(n - i)] = p.coeff(static_cast<std::size_t>(i)) *
                                           ipow(scale, static_cast<unsigned>(n - i));
  }
  return IntPoly(std::move(out));
}

namespace {

std::vector<BigInt> positive_divisors(const BigInt& v) {
  BigInt a = abs(v);
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

bool has_rational_root(const IntPoly& p) {
  if (p.coeff(0) == 0) return true;
  const auto num = positive_divisors(p.coeff(0));
  const auto den = positive_divisors(p.leading());
  const int n = p.degree();
  for (const auto& q : den) {
    for (const auto& r : num) {
      if (gcd(q, r) != 1) continue;
      for (int sign : {1, -1}) {
        // q^n P(r/q) = sum c_i r^i q^{n-i}
        BigInt acc = 0;
        BigInt rp = 1;
        for (int i = 0; i <= n; ++i) {
          acc += p.coeff(static_cast<std::size_t>(i)) * rp * ipow(q, static_cast<unsigned>(n - i));
          rp *= sign * r;
        }
        if (acc == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace

bool is_irreducible_cubic_or_less(const IntPoly& p) {
  if (p.is_zero() || p.degree() < 1) throw InvalidInput("irreducibility test needs degree 1..3");
  if (p.degree() > 3) throw InvalidInput("irreducibility test supports degree <= 3 only");
  if (p.content() != 1) return false;
  if (p.degree() == 1) return true;
  return !has_rational_root(p);
}

double root_bound_lz(const IntPoly& p) {
  if (p.degree() != 3) throw InvalidInput("Lagrange-Zassenhaus bound needs a cubic with c3 != 0");
  const double c3 = std::fabs(to_double(p.coeff(3)));
  const double t2 = std::fabs(to_double(p.coeff(2))) / c3;
  const double t1 = std::sqrt(std::fabs(to_double(p.coeff(1))) / c3);
  const double t0 = std::cbrt(std::fabs(to_double(p.coeff(0))) / c3);
  return 2.0 * std::max({t2, t1, t0});
}

IntPoly exact_quotient(const IntPoly& p, const IntPoly& d) {
  if (d.is_zero()) throw InvalidInput("division by the zero polynomial");
  if (p.is_zero()) return {};
  if (p.degree() < d.degree()) throw InvalidInput("exact_quotient: divisor does not divide");
  IntVector rem = p.coeffs();
  const auto dd = static_cast<std::size_t>(d.degree());
  IntVector quot(rem.size() - dd);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt& top = rem[k + dd];
    if (top % d.leading() != 0) throw InvalidInput("exact_quotient: divisor does not divide");
    BigInt c = top / d.leading();
    for (std::size_t i = 0; i <= dd; ++i) rem[k + i] -= c * d.coeffs()[i];
    quot[k] = std::move(c);
  }
  for (const auto& r : rem)
    if (r != 0) throw InvalidInput("exact_quotient: divisor does not divide");
  return IntPoly(std::move(quot));
}

namespace {

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  IntVector rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  const BigInt& lb = b.leading();
  for (std::size_t top = rem.size(); top-- > db;) {
    BigInt c = rem[top];
    for (auto& r : rem) r *= lb;
    for (std::size_t i = 0; i <= db; ++i) rem[top - db + i] -= c * b.coeffs()[i];
    rem.resize(top);
  }
  return IntPoly(std::move(rem));
}

}  // namespace

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPoly x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return IntPoly{1};
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.primitive_part();
  }
  return x.primitive_part();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  if (p.is_zero()) throw InvalidInput("square-free decomposition of the zero polynomial");
  std::vector<std::pair<IntPoly, int>> out;
  IntPoly a = p.primitive_part();
  if (a.degree() < 1) return out;
  IntPoly b = poly_gcd(a, a.derivative());
  IntPoly c = exact_quotient(a, b).primitive_part();
  int k = 1;
  while (c.degree() > 0) {
    IntPoly y = poly_gcd(b, c);
    IntPoly factor = exact_quotient(c, y).primitive_part();
    if (factor.degree() > 0) out.emplace_back(std::move(factor), k);
    b = exact_quotient(b, y).primitive_part();
    c = std::move(y);
    ++k;
  }
  return out;
}

}  // namespace veronese
