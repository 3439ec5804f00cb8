#include "veronese/mobius.hpp"

#include <algorithm>

#include "veronese/errors.hpp"

namespace veronese {

namespace {

// Coefficients of (u x + v)^k, low degree first.
IntVector linear_power(const BigInt& u, const BigInt& v, int k) {
  IntVector out{BigInt(1)};
  for (int step = 0; step < k; ++step) {
    IntVector next(out.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i] += out[i] * v;
      next[i + 1] += out[i] * u;
    }
    out = std::move(next);
  }
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

bool Mat2::is_unimodular() const {
  BigInt dt = det();
  return dt == 1 || dt == -1;
}

BigInt Mat2::norm() const { return std::max({abs(a), abs(b), abs(c), abs(d)}); }

Mat2 Mat2::inverse() const {
  BigInt dt = det();
  if (dt != 1 && dt != -1) throw InvalidInput("matrix is not unimodular: det = " + veronese::to_string(dt));
  return {dt * d, -dt * b, -dt * c, dt * a};
}

std::string Mat2::to_string() const {
  return "[" + veronese::to_string(a) + "," + veronese::to_string(b) + "," + veronese::to_string(c) + "," +
         veronese::to_string(d) + "]";
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

IntMatrix phi(int n, const Mat2& B) {
  if (n < 1) throw InvalidInput("phi: n must be >= 1");
  const auto size = static_cast<std::size_t>(n) + 1;
  IntMatrix m(size, size);
  std::vector<IntVector> num(size), den(size);
  for (int k = 0; k <= n; ++k) {
    num[static_cast<std::size_t>(k)] = linear_power(B.a, B.b, k);
    den[static_cast<std::size_t>(k)] = linear_power(B.c, B.d, k);
  }
  for (int i = 0; i <= n; ++i) {
    const auto& u = num[static_cast<std::size_t>(i)];
    const auto& v = den[static_cast<std::size_t>(n - i)];
    for (std::size_t s = 0; s < u.size(); ++s) {
      if (u[s] == 0) continue;
      for (std::size_t t = 0; t < v.size(); ++t) m(static_cast<std::size_t>(i), s + t) += u[s] * v[t];
    }
  }
  return m;
}

IntMatrix phi_binomial_sum(int n, const Mat2& B) {
  if (n < 1) throw InvalidInput("phi: n must be >= 1");
  const auto size = static_cast<std::size_t>(n) + 1;
  IntMatrix m(size, size);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      BigInt s = 0;
      for (int h = std::max(0, j - (n - i)); h <= std::min(i, j); ++h) {
        s += binomial(i, h) * binomial(n - i, j - h) * ipow(B.a, static_cast<unsigned>(h)) *
             ipow(B.b, static_cast<unsigned>(i - h)) * ipow(B.c, static_cast<unsigned>(j - h)) *
             ipow(B.d, static_cast<unsigned>(n - i - j + h));
      }
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
    }
  return m;
}

IntPoly mobius_act_poly(const Mat2& B, const IntPoly& p, int n) {
  if (B.det() == 0) throw InvalidInput("mobius_act_poly: singular matrix " + B.to_string());
  IntVector coeffs = p.as_form(n);
  return IntPoly(phi(n, B).transpose().apply(coeffs));
}

IntVector transport_approx(const Mat2& B, const IntVector& p) {
  if (p.size() < 2) throw InvalidInput("transport_approx: vector must have length n + 1 >= 2");
  return phi(static_cast<int>(p.size()) - 1, B).apply(p);
}

IntMatrix subspace_equations(const IntVector& a, int n) {
  const int h = static_cast<int>(a.size()) - 1;
  if (h < 0 || h > n) throw InvalidInput("subspace_equations: need 0 <= h <= n");
  if (std::all_of(a.begin(), a.end(), [](const BigInt& v) { return v == 0; }))
    throw InvalidInput("subspace_equations: coefficient vector is zero");
  IntMatrix m(static_cast<std::size_t>(n - h + 1), static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n - h; ++j)
    for (int k = 0; k <= h; ++k) m(static_cast<std::size_t>(j), static_cast<std::size_t>(j + k)) = a[static_cast<std::size_t>(k)];
  return m;
}

bool in_subspace(const IntVector& a, const IntVector& v) {
  auto eq = subspace_equations(a, static_cast<int>(v.size()) - 1);
  auto r = eq.apply(v);
  return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; });
}

IntVector subspace_map(const Mat2& B, const IntVector& a) {
  if (!B.is_unimodular()) throw InvalidInput("subspace_map: matrix is not unimodular");
  const int h = static_cast<int>(a.size()) - 1;
  if (h < 1) throw InvalidInput("subspace_map: need h >= 1");
  return phi(h, B.inverse()).transpose().apply(a);
}

}  // namespace veronese
