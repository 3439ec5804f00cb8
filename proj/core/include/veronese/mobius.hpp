#pragma once

#include <string>

#include "veronese/intmat.hpp"
#include "veronese/polyarith.hpp"

namespace veronese {

/// 2x2 integer matrix [[a, b], [c, d]] acting by x -> (ax + b) / (cx + d).
struct Mat2 {
  BigInt a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {}; }

  BigInt det() const { return a * d - b * c; }
  bool is_unimodular() const;
  /// max(|a|, |b|, |c|, |d|)
  BigInt norm() const;
  /// Integer inverse; requires det = ±1.
  Mat2 inverse() const;

  std::string to_string() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// phi_n(B): entry (i, j) is the coefficient of x^j in (ax+b)^i (cx+d)^(n-i),
/// computed by expanding the product.
IntMatrix phi(int n, const Mat2& B);

/// The same matrix from the closed binomial double sum
/// sum_h C(i,h) C(n-i,j-h) a^h b^(i-h) c^(j-h) d^(n-i-j+h).
IntMatrix phi_binomial_sum(int n, const Mat2& B);

/// (cx+d)^n P((ax+b)/(cx+d)), with P read as a degree-n form.
/// act(B2, act(B1, p)) == act(B1 * B2, p). Throws on singular B.
IntPoly mobius_act_poly(const Mat2& B, const IntPoly& p, int n);

/// q = phi_n(B) p for a vector p of length n + 1.
IntVector transport_approx(const Mat2& B, const IntVector& p);

/// Rows of the linear system a_0 x_j + ... + a_h x_{j+h} = 0, 0 <= j <= n-h,
/// whose solution space in R^(n+1) is L_a.
IntMatrix subspace_equations(const IntVector& a, int n);

/// True iff v lies in L_a.
bool in_subspace(const IntVector& a, const IntVector& v);

/// b = phi_h(B^-1)^T a, so that phi_n(B) L_a = L_b. Requires det B = ±1.
IntVector subspace_map(const Mat2& B, const IntVector& a);

}  // namespace veronese
