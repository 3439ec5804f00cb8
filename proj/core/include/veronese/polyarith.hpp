#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "veronese/bigint.hpp"

namespace veronese {

/// Integer polynomial c_0 + c_1 x + ... + c_n x^n with arbitrary-precision
/// coefficients. Trailing zero coefficients are always trimmed, so the zero
/// polynomial has an empty coefficient vector and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(IntVector coeffs);
  IntPoly(std::initializer_list<long long> coeffs);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  const IntVector& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^i (zero past the degree).
  BigInt coeff(std::size_t i) const;
  const BigInt& leading() const;

  /// Coefficients padded with zeros to length n + 1; throws if deg > n.
  IntVector as_form(int n) const;

  IntPoly derivative() const;
  BigInt content() const;
  IntPoly primitive_part() const;

  BigInt evaluate(const BigInt& x) const;

  std::string to_string() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& k, const IntPoly& p);
  IntPoly operator-() const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

 private:
  void trim();
  IntVector coeffs_;
};

/// Naive height max |c_i|.
BigInt height(const IntPoly& p);

/// Exact representation of H_d for a polynomial of degree <= 3: the value is
/// fourth_power^(1/4). Ordering compares the integers, which is exact.
struct HdValue {
  BigInt fourth_power;
  static constexpr unsigned root_exponent = 4;

  double value() const;
  friend std::strong_ordering operator<=>(const HdValue& a, const HdValue& b) {
    if (a.fourth_power < b.fourth_power) return std::strong_ordering::less;
    if (b.fourth_power < a.fourth_power) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const HdValue& a, const HdValue& b) = default;
};

/// max{|c2|, |c3|, |c1 c2|^{1/2}, |c0 c2^3|^{1/4}, |c0 c3|^{1/2}, |c1^3 c3|^{1/4},
/// |c0 c1 c2 c3|^{1/4}}, every candidate compared as a fourth power.
HdValue height_d(const IntPoly& p);
HdValue height_d(const BigInt& c0, const BigInt& c1, const BigInt& c2, const BigInt& c3);

/// Sylvester resultant via Bareiss elimination.
BigInt resultant(const IntPoly& p, const IntPoly& q);

/// Standard discriminant (-1)^{n(n-1)/2} Res(p, p') / a_n, degree >= 2.
BigInt discriminant(const IntPoly& p);

/// Discriminant of p viewed as a binary form of degree n (deg p <= n).
/// A missing leading coefficient contributes a root at infinity:
/// Disc_n = a_{n-1}^2 Disc_{n-1}, and two or more missing terms give 0.
BigInt form_discriminant(const IntPoly& p, int n);

/// Closed-form discriminant of c3 x^3 + c2 x^2 + c1 x + c0.
BigInt cubic_discriminant(const BigInt& c0, const BigInt& c1, const BigInt& c2, const BigInt& c3);

/// P(x + j)
IntPoly shift(const IntPoly& p, const BigInt& j);

/// (C x)^n P(1 / (C x)) for P of degree <= n.
IntPoly reverse_scale(const IntPoly& p, const BigInt& scale, int n);

/// Irreducibility over Z for degree 1..3. Content > 1 counts as reducible.
bool is_irreducible_cubic_or_less(const IntPoly& p);

/// Lagrange-Zassenhaus bound 2 max{|c2/c3|, |c1/c3|^{1/2}, |c0/c3|^{1/3}}.
double root_bound_lz(const IntPoly& p);

/// p / d when d divides p in Z[x]; throws InvalidInput otherwise.
IntPoly exact_quotient(const IntPoly& p, const IntPoly& d);

/// Primitive gcd over Z[x] (positive leading coefficient).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

/// Square-free decomposition (Musser) of the primitive part: returns (factor, k)
/// pairs with p = content * prod factor^k up to sign. Only non-constant
/// factors are returned.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

}  // namespace veronese
