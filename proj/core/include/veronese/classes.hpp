#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "veronese/mobius.hpp"
#include "veronese/polyarith.hpp"

namespace veronese {

struct Reduction {
  IntPoly representative;
  /// act(witness, input) == representative, det witness = ±1.
  Mat2 witness;
  HdValue hd;
  /// Number of equal-H_d forms seen in the final plateau search.
  std::size_t plateau_size = 0;
};

/// Descends to a form of locally minimal H_d in the GL2(Z) class of the cubic
/// form p. The start is moved so the centre of the root covariant
/// sum |x_j - x_k|^2 |x - x_i y|^2 lies in the standard fundamental domain.
/// Moves: x -> x ± 1, x -> x / (x ± 1), x -> -1/x, x -> -x, P -> -P and
/// the translations centring the roots in either chart. Ties are explored
/// breadth-first up to `depth` moves; when stuck, every unimodular matrix
/// with entries in [-3, 3] is tried once. Among the final plateau the form
/// with positive leading coefficient and smallest (c3, c2, c1, c0) wins, so
/// a form with c3 = 0 (a rational root sent to infinity) may be returned.
Reduction reduce_min_hd(const IntPoly& p, int depth = 6);

struct RootGap {
  double lower = 0.0;
  double upper = 0.0;
};

/// Certified bounds on the smallest distance between two distinct roots.
/// Requires a square-free p of degree >= 2.
RootGap min_root_gap(const IntPoly& p, double target_radius = 1e-12);

/// True iff every pair of roots is farther apart than eps. Requires D(p) != 0.
/// Throws PrecisionExhausted when the certified disks cannot decide.
bool check_root_separation(const IntPoly& p, double eps);

enum class Verdict { equivalent, not_equivalent, unknown };

struct EquivalenceResult {
  Verdict verdict = Verdict::unknown;
  /// Valid for Verdict::equivalent: act(witness, p) == q.
  Mat2 witness;
  std::string reason;
};

std::string to_string(Verdict v);

/// Decides whether the cubic forms p and q lie in one GL2(Z) orbit.
/// NotEquivalent only from exact invariants (discriminant, content, number
/// of rational roots). Witness search covers every unimodular B whose first
/// column has entries bounded by entry_bound.
EquivalenceResult equivalent(const IntPoly& p, const IntPoly& q, int entry_bound);

struct ClassRecord {
  IntPoly canonical;
  BigInt discriminant;
  std::uint64_t members_found = 0;
  /// (member, B) with act(B, member) == canonical; capped in length.
  std::vector<std::pair<IntPoly, Mat2>> witnesses;
};

struct ClassOptions {
  int threads = 0;
  int depth = 6;
  int entry_bound = 8;
  std::size_t witness_cap = 8;
  double budget = 2e10;
};

struct ClassCensus {
  int height_cap = 0;
  long long disc_cap = 0;
  std::vector<ClassRecord> classes;
  /// d -> number of classes found with discriminant d.
  std::map<long long, std::size_t> histogram;
  /// Pairs of reduced keys with equal discriminant whose equivalence stayed
  /// undecided; each leaves one extra class in the histogram.
  std::size_t unresolved_pairs = 0;
};

/// Classes of cubics with c3 != 0, height <= height_cap and 0 < |D| <= disc_cap.
/// Counts are lower bounds for the true class numbers h(d).
ClassCensus enumerate_classes(int height_cap, long long disc_cap, const ClassOptions& options = {});

/// sum over d of histogram[d]
std::size_t total_classes(const ClassCensus& census);

}  // namespace veronese
