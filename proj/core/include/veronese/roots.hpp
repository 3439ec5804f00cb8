#pragma once

#include <complex>
#include <vector>

#include "veronese/polyarith.hpp"

namespace veronese {

/// A disk certified to contain exactly `multiplicity` roots of the source
/// polynomial, counted with multiplicity, all equal to one complex number.
struct CertifiedRoot {
  std::complex<double> center;
  double radius = 0.0;
  int multiplicity = 1;
};

/// All complex roots of p (degree >= 1), one entry per distinct root, with
/// exact multiplicities from a square-free decomposition. Multiplicities sum
/// to deg p. Every disk has radius <= target_radius and the disks are
/// pairwise disjoint.
///
/// Approximations come from Aberth-Ehrlich iteration, first in `long double`
/// and then in progressively wider binary floats. Radii are a posteriori
/// inclusion radii m |s(z_i)| / |lc(s) prod_{j != i} (z_i - z_j)| for each
/// square-free factor s of degree m, inflated by a rounding-error bound for
/// the evaluation of s and for the final conversion of the center to double.
///
/// Throws PrecisionExhausted (carrying the best radii) when the widest
/// working precision cannot meet target_radius.
std::vector<CertifiedRoot> roots(const IntPoly& p, double target_radius = 1e-12);

/// Roots with multiplicity expanded into repeated entries (deg p entries).
std::vector<CertifiedRoot> roots_with_multiplicity(const IntPoly& p, double target_radius = 1e-12);

}  // namespace veronese
