#include "veronese/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "veronese/errors.hpp"

namespace veronese {

namespace {

template <class R>
struct Cx {
  R re{0};
  R im{0};
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  R den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
template <class R>
R norm2(const Cx<R>& a) {
  return a.re * a.re + a.im * a.im;
}
template <class R>
R modulus(const Cx<R>& a) {
  using std::sqrt;
  return sqrt(norm2(a));
}

template <class R>
R from_bigint(const BigInt& v) {
  return v.template convert_to<R>();
}

template <class R>
double to_dbl(const R& v) {
  return static_cast<double>(v);
}

// Horner evaluation of p and p' at z.
template <class R>
void eval_with_derivative(const std::vector<R>& c, const Cx<R>& z, Cx<R>& value, Cx<R>& deriv) {
  value = {c.back(), R(0)};
  deriv = {R(0), R(0)};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + Cx<R>{c[k], R(0)};
  }
}

template <class R>
Cx<R> eval(const std::vector<R>& c, const Cx<R>& z) {
  Cx<R> value{c.back(), R(0)};
  for (std::size_t k = c.size() - 1; k-- > 0;) value = value * z + Cx<R>{c[k], R(0)};
  return value;
}

std::vector<std::complex<double>> initial_guesses(const IntPoly& s) {
  const int m = s.degree();
  const double lead = std::fabs(to_double(s.leading()));
  const double center = -to_double(s.coeff(static_cast<std::size_t>(m - 1))) / (m * to_double(s.leading()));
  double radius = 0.0;
  for (int k = 1; k <= m; ++k) {
    double a = std::fabs(to_double(s.coeff(static_cast<std::size_t>(m - k)))) / lead;
    if (a > 0) radius = std::max(radius, std::pow(a, 1.0 / k));
  }
  radius = std::max(radius, 1e-3) + std::fabs(center);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / m + 0.7;
    z[static_cast<std::size_t>(k)] = {center + radius * std::cos(angle), radius * std::sin(angle)};
  }
  return z;
}

struct Disk {
  std::complex<double> center;
  double radius;
  int multiplicity;
};

// One square-free factor at one working precision. Returns certified disks,
// or nullopt when the iteration did not settle.
template <class R>
std::optional<std::vector<Disk>> certify_factor(const IntPoly& s, int multiplicity,
                                                 const std::vector<std::complex<double>>& start) {
  using std::fabs;
  using std::sqrt;
  const int m = s.degree();
  const R eps = std::numeric_limits<R>::epsilon();
  std::vector<R> c;
  c.reserve(static_cast<std::size_t>(m) + 1);
  for (const auto& v : s.coeffs()) c.push_back(from_bigint<R>(v));
  std::vector<R> abs_c;
  for (const auto& v : c) abs_c.push_back(v < 0 ? R(-v) : v);

  if (m == 1) {
    R root = -c[0] / c[1];
    std::complex<double> center(to_dbl(root), 0.0);
    R diff = root - R(center.real());
    if (diff < 0) diff = -diff;
    const R rel = (root < 0 ? R(-root) : root) * eps * 4;
    double radius = to_dbl(diff + rel) * (1 + 1e-12) + std::numeric_limits<double>::denorm_min();
    return std::vector<Disk>{{center, radius, multiplicity}};
  }

  std::vector<Cx<R>> z(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = {R(start[i].real()), R(start[i].imag())};

  const R tol = eps * 16;
  bool settled = false;
  for (int iter = 0; iter < 2000 && !settled; ++iter) {
    settled = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      Cx<R> v, d;
      eval_with_derivative(c, z[i], v, d);
      if (norm2(v) == 0) continue;
      if (norm2(d) == 0) {
        z[i] = z[i] + Cx<R>{tol * 1024, tol * 1024};
        settled = false;
        continue;
      }
      Cx<R> newton = v / d;
      Cx<R> repulsion{R(0), R(0)};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == i) continue;
        Cx<R> diff = z[i] - z[j];
        if (norm2(diff) == 0) continue;
        repulsion = repulsion + Cx<R>{R(1), R(0)} / diff;
      }
      Cx<R> denom = Cx<R>{R(1), R(0)} - newton * repulsion;
      Cx<R> step = norm2(denom) == 0 ? newton : newton / denom;
      z[i] = z[i] - step;
      R scale = modulus(z[i]);
      if (scale < R(1)) scale = R(1);
      if (modulus(step) > tol * scale) settled = false;
    }
  }

  std::vector<Disk> disks;
  const R lead = abs_c.back();
  const R evaluation_slack = eps * R(8 * m + 16);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const R zi_abs = modulus(z[i]);
    R magnitude = abs_c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) magnitude = magnitude * zi_abs + abs_c[k];
    R value = modulus(eval(c, z[i])) + evaluation_slack * magnitude;
    R prod = lead;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      prod *= modulus(z[i] - z[j]);
    }
    if (prod == 0) return std::nullopt;
    R radius = R(m) * value / prod * (R(1) + eps * R(16 * m + 16));
    std::complex<double> center(to_dbl(z[i].re), to_dbl(z[i].im));
    Cx<R> rounding = z[i] - Cx<R>{R(center.real()), R(center.imag())};
    radius += modulus(rounding);
    double r = to_dbl(radius);
    // Outward rounding of the conversion to double.
    r = std::nextafter(r * (1 + 1e-15), std::numeric_limits<double>::infinity());
    if (!std::isfinite(r)) return std::nullopt;
    disks.push_back({center, r, multiplicity});
  }
  return disks;
}

template <class R>
std::optional<std::vector<Disk>> certify_all(const std::vector<std::pair<IntPoly, int>>& factors,
                                             std::vector<std::vector<std::complex<double>>>& guesses) {
  std::vector<Disk> all;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    auto disks = certify_factor<R>(factors[f].first, factors[f].second, guesses[f]);
    if (!disks) return std::nullopt;
    for (std::size_t i = 0; i < disks->size(); ++i) {
      if (i < guesses[f].size()) guesses[f][i] = (*disks)[i].center;
    }
    all.insert(all.end(), disks->begin(), disks->end());
  }
  return all;
}

bool acceptable(const std::vector<Disk>& disks, double target) {
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (!(disks[i].radius <= target)) return false;
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      if (std::abs(disks[i].center - disks[j].center) <= disks[i].radius + disks[j].radius) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CertifiedRoot> roots(const IntPoly& p, double target_radius) {
  if (p.is_zero() || p.degree() < 1) throw InvalidInput("roots: degree must be >= 1");
  if (!(target_radius > 0)) throw InvalidInput("roots: target radius must be positive");
  const auto factors = squarefree_decomposition(p);
  std::vector<std::vector<std::complex<double>>> guesses;
  for (const auto& f : factors) guesses.push_back(initial_guesses(f.first));

  std::vector<double> best_radii;
  auto attempt = [&](auto tag) -> std::optional<std::vector<Disk>> {
    using R = decltype(tag);
    auto disks = certify_all<R>(factors, guesses);
    if (!disks) return std::nullopt;
    if (best_radii.empty() || std::ranges::max(best_radii) > 0) {
      std::vector<double> radii;
      for (const auto& d : *disks) radii.push_back(d.radius);
      if (best_radii.empty() || std::ranges::max(radii) < std::ranges::max(best_radii)) best_radii = radii;
    }
    if (acceptable(*disks, target_radius)) return disks;
    return std::nullopt;
  };

  std::optional<std::vector<Disk>> result = attempt(static_cast<long double>(0));
  if (!result) result = attempt(BinFloat<128>(0));
  if (!result) result = attempt(BinFloat<256>(0));
  if (!result) result = attempt(BinFloat<512>(0));
  if (!result) result = attempt(BinFloat<1024>(0));
  if (!result) {
    throw PrecisionExhausted("roots: could not certify disjoint disks of radius <= target", best_radii);
  }

  std::vector<CertifiedRoot> out;
  for (const auto& d : *result) out.push_back({d.center, d.radius, d.multiplicity});
  std::ranges::sort(out, [](const CertifiedRoot& a, const CertifiedRoot& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

std::vector<CertifiedRoot> roots_with_multiplicity(const IntPoly& p, double target_radius) {
  std::vector<CertifiedRoot> out;
  for (const auto& r : roots(p, target_radius))
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r);
  return out;
}

}  // namespace veronese
