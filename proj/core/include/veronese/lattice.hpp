#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "veronese/bigint.hpp"
#include "veronese/intmat.hpp"

namespace veronese {

/// coefficient * base^exponent with rational coefficient >= 0, rational
/// exponent and a rational base > 1 shared by everything it is compared with.
struct ScaledRational {
  Rational coefficient = 0;
  Rational exponent = 0;

  double to_double(const Rational& base) const;
  std::string to_string() const;
};

/// Exact three-way comparison of x and y, both scaled by `base`.
int compare(const ScaledRational& x, const ScaledRational& y, const Rational& base);

/// Symmetric parallelepiped {v : |L_i(v)| <= radius_i}, with L lower
/// triangular (row i only reads v_0..v_i, nonzero diagonal).
struct LinearBox {
  std::vector<std::vector<Rational>> rows;
  std::vector<ScaledRational> radii;
  Rational base = 2;

  std::size_t dimension() const { return rows.size(); }
  /// Volume as a scaled rational: 2^dim prod radius_i / |prod diagonal|.
  ScaledRational volume() const;
  /// Smallest t >= 0 with v in t * box.
  ScaledRational gauge(const IntVector& v) const;
};

/// The Veronese box around x0 at scale Q with unit constants:
///   |q0| <= Q,  |x0 q0 - q1| <= Q^((1-lambda)/2),
///   |(1-i) x0^i q0 + i x0^(i-1) q1 - q_i| <= Q^(-lambda),  2 <= i <= n.
struct BoxSpec {
  int n = 1;
  Rational x0 = 0;
  Rational Q = 2;
  Rational lambda = Rational(1, 2);

  LinearBox box() const;
};

struct MinimaResult {
  std::vector<ScaledRational> taus;
  std::vector<IntVector> witnesses;
  ScaledRational volume;
  Rational base = 2;
  /// prod tau_i * vol compared exactly with 2^d / d! and 2^d.
  bool minkowski_lower = false;
  bool minkowski_upper = false;
  double product = 0.0;
  std::size_t points_examined = 0;

  std::vector<double> tau_values() const;
  bool minkowski_ok() const { return minkowski_lower && minkowski_upper; }
};

/// Thrown when the dilation cap is reached before a full set of minima is
/// found; carries the minima found so far.
class MinimaIncomplete : public std::runtime_error {
 public:
  MinimaIncomplete(const std::string& what, MinimaResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const MinimaResult& partial() const noexcept { return partial_; }

 private:
  MinimaResult partial_;
};

struct MinimaOptions {
  /// Upper limit on the number of lattice points enumerated in one pass.
  double budget = 5e7;
};

/// Exact successive minima of `box` on Z^d by enumerating integer points of
/// growing dilates, capped at dilation_cap.
MinimaResult successive_minima(const LinearBox& box, const Rational& dilation_cap,
                               const MinimaOptions& options = {});
MinimaResult successive_minima(const BoxSpec& spec, const Rational& dilation_cap,
                               const MinimaOptions& options = {});

/// Linearly dependent vectors; dependency() holds c with sum c_i v_i = 0.
class DependentVectors : public std::invalid_argument {
 public:
  DependentVectors(const std::string& what, IntVector dependency)
      : std::invalid_argument(what), dependency_(std::move(dependency)) {}
  const IntVector& dependency() const noexcept { return dependency_; }

 private:
  IntVector dependency_;
};

struct SubspaceHeight {
  /// det(V V^T) for the rows of V.
  BigInt gram_determinant;
  double height = 0.0;
};

/// Covolume of the lattice generated by vs. Throws DependentVectors.
SubspaceHeight subspace_height(const std::vector<IntVector>& vs);

/// Height of span(vs) ∩ Z^d, i.e. subspace_height(saturate(vs)).
SubspaceHeight saturated_height(const std::vector<IntVector>& vs);

/// Every integer point of span(vs) with sup norm <= bound, sorted.
std::vector<IntVector> points_in_cube(const std::vector<IntVector>& vs, long long bound);

/// The (h+1) x (n-h+1) matrix with entries q_{i+j}.
IntMatrix hankel(const IntVector& q, int h);

struct TypeResult {
  int type = 0;
  /// ranks[h] = rank of hankel(q, h) for 0 <= h <= n/2.
  std::vector<std::size_t> ranks;
  /// False if some full-rank h follows a rank-deficient smaller h.
  bool monotone = true;
};

/// Largest h in [0, n/2] where the Hankel matrix has full rank h + 1.
TypeResult type_of(const IntVector& q);

struct OrthogonalVector {
  IntVector a;
  /// bound actually searched, divided by ||q||_inf^(1/n)
  double slack_used = 1.0;
};

/// Nonzero integer a with a.q = 0 and smallest sup norm within
/// slack * ||q||_inf^(1/n), widening the search bound by factors of 2.
/// Ties: smaller l1 norm, then lexicographically largest with first nonzero
/// entry positive. q is divided by its content first.
OrthogonalVector small_orthogonal_vector(const IntVector& q, double bound_slack = 1.0,
                                         double budget = 5e7);

}  // namespace veronese
