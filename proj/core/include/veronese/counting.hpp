#pragma once

#include <cstdint>
#include <vector>

#include "veronese/classes.hpp"
#include "veronese/polyarith.hpp"
#include "veronese/stats.hpp"

namespace veronese {

/// #{cubic P : c3 != 0, H(P) <= height, 0 < |D(P)| <= disc_cap}.
struct CountRecord {
  long long height = 0;
  long long disc_cap = 0;
  std::uint64_t count = 0;
  double wall_time = 0.0;
  /// Orbit size folded by the symmetric enumeration (sign and x -> -x).
  int symmetry_factor = 4;
};

struct CountOptions {
  int threads = 0;
  /// Maximum number of coefficient cells (2H+1)^4 an enumeration may visit.
  double budget = 2e10;
};

/// Work estimate (2H+1)^4 checked against the budget.
double count_cells(long long height);

CountRecord count_nhd(long long height, long long disc_cap, const CountOptions& options = {});

/// One enumeration pass serving every cap in disc_caps (any order).
std::vector<CountRecord> count_nhd_grid(long long height, const std::vector<long long>& disc_caps,
                                        const CountOptions& options = {});

/// Reference count: all four coefficients looped without symmetry, the
/// discriminant taken from the resultant of P and P'.
std::vector<CountRecord> count_nhd_naive(long long height, const std::vector<long long>& disc_caps,
                                         const CountOptions& options = {});

struct EquivalentCount {
  std::uint64_t confirmed = 0;
  std::uint64_t unknown = 0;
  /// Cubics with D = D(p) that were disproved to be equivalent.
  std::uint64_t rejected = 0;
  int final_entry_bound = 0;
  bool exact() const { return unknown == 0; }
};

/// #{Q ≈ p : c3(Q) != 0, H(Q) <= height}, as the interval
/// [confirmed, confirmed + unknown].
EquivalentCount count_equivalents(const IntPoly& p, long long height, const CountOptions& options = {},
                                  const std::vector<int>& entry_bounds = {4, 8, 16, 32});

struct ExponentFit {
  double alpha_h = 0.0;
  double alpha_d = 0.0;
  double constant = 0.0;
};

/// Least squares log N = log C + alpha_h log H + alpha_d log D over records
/// with N > 0. Needs three distinct heights at some cap and three distinct
/// caps at some height.
ExponentFit fit_exponents(const std::vector<CountRecord>& records);

}  // namespace veronese
