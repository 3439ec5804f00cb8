#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "veronese/mobius.hpp"
#include "veronese/polyarith.hpp"

namespace veronese::testing {

using Rng = std::mt19937_64;

long long uniform(Rng& rng, long long lo, long long hi);

/// Random polynomial of exact degree `degree`, coefficients in [-h, h].
IntPoly random_poly(Rng& rng, int degree, long long h);

Mat2 random_matrix(Rng& rng, long long bound);

/// Word of `length` generators C1^{±1}, C2, diag(-1, 1); det ±1.
Mat2 random_word(Rng& rng, int length);

/// Random unimodular matrix with entries in [-bound, bound], by rejection.
Mat2 random_unimodular(Rng& rng, long long bound);

/// Random SL2(Z) element as a word in C1 = [[1,0],[1,1]] and C2 = [[0,1],[-1,0]].
Mat2 random_sl2_word(Rng& rng, int length);

/// Coefficients of prod (x - r_i) scaled by lead, in long double.
std::vector<std::complex<long double>> expand_roots(const std::vector<std::complex<long double>>& roots,
                                                    long double lead);

/// Determinant of a small square matrix by cofactor expansion (independent
/// of the Bareiss code under test).
BigInt cofactor_det(const std::vector<std::vector<BigInt>>& m);

/// Sylvester matrix of p and q (deg p = m, deg q = n), (m+n) x (m+n).
std::vector<std::vector<BigInt>> sylvester(const IntPoly& p, const IntPoly& q);

}  // namespace veronese::testing
