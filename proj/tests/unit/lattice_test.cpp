#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "veronese/errors.hpp"
#include "veronese/lattice.hpp"

namespace veronese {
namespace {

using testing::Rng;

LinearBox half_box() {
  LinearBox box;
  box.rows = {{Rational(1), Rational(0)}, {Rational(1, 2), Rational(-1)}};
  box.radii = {ScaledRational{Rational(4), Rational(0)}, ScaledRational{Rational(1, 4), Rational(0)}};
  box.base = 2;
  return box;
}

LinearBox unit_cube(std::size_t d, const Rational& radius = 1) {
  LinearBox box;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(d, Rational(0));
    row[i] = 1;
    box.rows.push_back(row);
    box.radii.push_back(ScaledRational{radius, Rational(0)});
  }
  return box;
}

Rational plain(const ScaledRational& s) {
  EXPECT_EQ(s.exponent, 0);
  return s.coefficient;
}

TEST(Minima, HalfSlopeBox) {
  auto r = successive_minima(half_box(), 64);
  ASSERT_EQ(r.taus.size(), 2u);
  EXPECT_EQ(plain(r.taus[0]), Rational(1, 2));
  EXPECT_EQ(r.witnesses[0], (IntVector{2, 1}));
  // exhaustive oracle over |q0| <= 16 for the second minimum
  Rational best_indep = 1000;
  for (long long q0 = -16; q0 <= 16; ++q0)
    for (long long q1 = -16; q1 <= 16; ++q1) {
      if (q0 * 1 - q1 * 2 == 0) continue;
      Rational off = Rational(q0, 2) - q1;
      if (off < 0) off = -off;
      const Rational g = std::max(Rational(std::llabs(q0), 4), Rational(off * 4));
      best_indep = std::min(best_indep, g);
    }
  EXPECT_EQ(plain(r.taus[1]), best_indep);
  EXPECT_TRUE(r.minkowski_ok());
}

TEST(Minima, UnitCube) {
  for (std::size_t d = 1; d <= 5; ++d) {
    auto r = successive_minima(unit_cube(d), 4);
    ASSERT_EQ(r.taus.size(), d);
    for (std::size_t i = 0; i < d; ++i) {
      EXPECT_EQ(plain(r.taus[i]), 1);
      EXPECT_EQ(max_abs(r.witnesses[i]), 1);
    }
    EXPECT_TRUE(r.minkowski_ok());
  }
}

TEST(Minima, ScalingHalvesMinima) {
  LinearBox box = half_box();
  auto r1 = successive_minima(box, 64);
  for (auto& rad : box.radii) rad.coefficient *= 2;
  auto r2 = successive_minima(box, 64);
  for (std::size_t i = 0; i < r1.taus.size(); ++i) EXPECT_EQ(plain(r2.taus[i]) * 2, plain(r1.taus[i]));
}

TEST(Minima, CapTooSmallCarriesPartialResult) {
  LinearBox box = half_box();
  try {
    successive_minima(box, Rational(3, 4));
    FAIL() << "expected MinimaIncomplete";
  } catch (const MinimaIncomplete& e) {
    EXPECT_EQ(e.partial().taus.size(), 1u);
  }
}

TEST(Minima, VeroneseBoxesSatisfyMinkowski) {
  Rng rng(81);
  for (int t = 0; t < 40; ++t) {
    BoxSpec spec;
    spec.n = static_cast<int>(testing::uniform(rng, 1, 3));
    spec.x0 = Rational(testing::uniform(rng, -20, 20), testing::uniform(rng, 1, 9));
    spec.Q = Rational(1LL << testing::uniform(rng, 2, 8));
    spec.lambda = testing::uniform(rng, 0, 1) ? Rational(2, 5) : Rational(1, 2);
    auto r = successive_minima(spec, Rational(1LL << 20));
    ASSERT_EQ(r.taus.size(), static_cast<std::size_t>(spec.n) + 1);
    ASSERT_TRUE(r.minkowski_ok()) << t;
    const LinearBox box = spec.box();
    IntMatrix w = IntMatrix::from_rows(r.witnesses);
    ASSERT_EQ(rank(w), r.witnesses.size());
    for (std::size_t i = 0; i < r.taus.size(); ++i) {
      ASSERT_EQ(compare(box.gauge(r.witnesses[i]), r.taus[i], spec.Q), 0);
      if (i > 0) ASSERT_LE(compare(r.taus[i - 1], r.taus[i], spec.Q), 0);
    }
  }
}

// Greedy over every point of a bounding cuboid, ordered by exact gauge.
std::vector<ScaledRational> cuboid_minima(const LinearBox& box, const std::vector<long long>& bound) {
  const std::size_t d = box.dimension();
  std::vector<std::pair<IntVector, ScaledRational>> pts;
  std::vector<long long> cur(d, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < d && cur[i] == bound[i]) cur[i++] = -bound[i];
    if (i == d) break;
    ++cur[i];
    IntVector v(cur.begin(), cur.end());
    if (max_abs(v) == 0) continue;
    pts.emplace_back(v, box.gauge(v));
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [&](const auto& x, const auto& y) { return compare(x.second, y.second, box.base) < 0; });
  std::vector<IntVector> chosen;
  std::vector<ScaledRational> taus;
  for (const auto& [v, g] : pts) {
    auto trial = chosen;
    trial.push_back(v);
    if (rank(IntMatrix::from_rows(trial)) == trial.size()) {
      chosen = trial;
      taus.push_back(g);
      if (chosen.size() == d) break;
    }
  }
  return taus;
}

TEST(Minima, MatchesCuboidOracle) {
  Rng rng(85);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    BoxSpec spec;
    spec.n = static_cast<int>(testing::uniform(rng, 1, 2));
    spec.x0 = Rational(testing::uniform(rng, -5, 5), testing::uniform(rng, 1, 4));
    spec.Q = Rational(1LL << testing::uniform(rng, 2, 4));
    spec.lambda = testing::uniform(rng, 0, 1) ? Rational(2, 5) : Rational(1, 2);
    const auto r = successive_minima(spec, Rational(1 << 20));
    const double top = r.tau_values().back() * 1.01;
    const double q = to_double(spec.Q), x = std::fabs(to_double(spec.x0));
    // |q_i| <= x^i |q0| + i x^(i-1) |q1| + slack, from the box rows
    std::vector<long long> bound;
    const double q0 = top * q;
    const double q1 = x * q0 + top * std::pow(q, 0.5);
    bound.push_back(static_cast<long long>(q0) + 1);
    bound.push_back(static_cast<long long>(q1) + 1);
    if (spec.n == 2) bound.push_back(static_cast<long long>(x * x * q0 + 2 * x * q1 + top) + 1);
    double cells = 1;
    for (long long b : bound) cells *= 2.0 * static_cast<double>(b) + 1;
    if (cells > 4e4) continue;
    const auto oracle = cuboid_minima(spec.box(), bound);
    ASSERT_EQ(oracle.size(), r.taus.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_EQ(compare(oracle[i], r.taus[i], spec.Q), 0) << t << " " << i;
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(Minima, CurvePointGivesSmallFirstMinimum) {
  // x0 = 1/2: (8, 4, 2, 1) lies on the curve and in every box around x0
  BoxSpec spec{3, Rational(1, 2), Rational(1024), Rational(1, 2)};
  auto r = successive_minima(spec, Rational(1LL << 20));
  const auto g = spec.box().gauge(IntVector{8, 4, 2, 1});
  EXPECT_LE(compare(r.taus[0], g, spec.Q), 0);
  EXPECT_LT(r.taus[0].to_double(spec.Q), 0.01);
}

TEST(BoxSpec, VolumeFormula) {
  for (int n = 1; n <= 4; ++n)
    for (long long Q : {4, 64, 1024})
      for (Rational lambda : {Rational(2, 5), Rational(1, 2), Rational(1)}) {
        BoxSpec spec{n, Rational(3, 7), Rational(Q), lambda};
        const ScaledRational v = spec.box().volume();
        const ScaledRational expected{Rational(1LL << (n + 1)),
                                      1 + (1 - lambda) / 2 - (n - 1) * lambda};
        EXPECT_EQ(compare(v, expected, spec.Q), 0) << n << " " << Q;
      }
}

TEST(SubspaceHeight, Examples) {
  EXPECT_DOUBLE_EQ(subspace_height({{3, 4}}).height, 5.0);
  EXPECT_DOUBLE_EQ(subspace_height({{1, 0, 0}, {0, 1, 0}}).height, 1.0);
  auto h = subspace_height({{1, 0, 1}, {0, 2, 0}});
  EXPECT_EQ(h.gram_determinant, 8);
  EXPECT_DOUBLE_EQ(h.height, std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(saturated_height({{2, 0}, {0, 2}}).height, 1.0);
  EXPECT_DOUBLE_EQ(saturated_height({{1, 0, 1}, {0, 2, 0}}).height, std::sqrt(2.0));
  EXPECT_THROW(subspace_height({{0, 0}}), InvalidInput);
}

TEST(SubspaceHeight, DependencyCertificate) {
  const std::vector<IntVector> vs{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  try {
    subspace_height(vs);
    FAIL() << "expected DependentVectors";
  } catch (const DependentVectors& e) {
    const IntVector& c = e.dependency();
    ASSERT_EQ(c.size(), vs.size());
    EXPECT_GT(max_abs(c), 0);
    for (std::size_t j = 0; j < 3; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < vs.size(); ++i) s += c[i] * vs[i][j];
      EXPECT_EQ(s, 0);
    }
  }
}

TEST(PointsInCube, MatchesBruteForce) {
  Rng rng(82);
  for (int t = 0; t < 30; ++t) {
    std::vector<IntVector> vs(static_cast<std::size_t>(testing::uniform(rng, 1, 2)), IntVector(3));
    for (auto& v : vs)
      for (auto& x : v) x = testing::uniform(rng, -3, 3);
    std::vector<IntVector> expected;
    IntMatrix m = IntMatrix::from_rows(vs);
    const std::size_t r = rank(m);
    if (r == 0) continue;
    for (long long a = -4; a <= 4; ++a)
      for (long long b = -4; b <= 4; ++b)
        for (long long c = -4; c <= 4; ++c) {
          auto rows = vs;
          rows.push_back(IntVector{a, b, c});
          if (rank(IntMatrix::from_rows(rows)) == r) expected.push_back(IntVector{a, b, c});
        }
    ASSERT_EQ(points_in_cube(vs, 4), expected);
  }
}

TEST(TypeOf, Examples) {
  EXPECT_EQ(type_of({1, 2, 4, 8}).type, 0);
  EXPECT_EQ(type_of({1, 0, 0, 1}).type, 1);
  EXPECT_EQ(type_of({1, 1, 1, 1}).type, 0);
  EXPECT_THROW(type_of({0, 0, 0}), InvalidInput);
  auto r = type_of({1, 0, 0, 1});
  EXPECT_EQ(r.ranks, (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(r.monotone);
}

TEST(TypeOf, InvariantUnderScaling) {
  Rng rng(83);
  for (int t = 0; t < 300; ++t) {
    IntVector q(static_cast<std::size_t>(testing::uniform(rng, 2, 7)));
    do {
      for (auto& x : q) x = testing::uniform(rng, -5, 5);
    } while (max_abs(q) == 0);
    const int h = type_of(q).type;
    IntVector neg = q, scaled = q;
    const long long k = testing::uniform(rng, 2, 9);
    for (auto& x : neg) x = -x;
    for (auto& x : scaled) x *= k;
    ASSERT_EQ(type_of(neg).type, h);
    ASSERT_EQ(type_of(scaled).type, h);
  }
}

TEST(TypeOf, CurvePointsHaveTypeZero) {
  for (long long u = 1; u <= 5; ++u)
    for (long long v = -5; v <= 5; ++v) {
      IntVector q;
      for (int i = 0; i <= 5; ++i) q.push_back(ipow(BigInt(u), static_cast<unsigned>(5 - i)) * ipow(BigInt(v), static_cast<unsigned>(i)));
      ASSERT_EQ(type_of(q).type, 0);
    }
}

TEST(SmallOrthogonal, Examples) {
  auto e = small_orthogonal_vector({1, 0, 0, 0});
  EXPECT_EQ(max_abs(e.a), 1);
  EXPECT_EQ(dot(e.a, IntVector{1, 0, 0, 0}), 0);
  auto two = small_orthogonal_vector({2, 3});
  EXPECT_EQ(two.a, (IntVector{3, -2}));
  auto big = small_orthogonal_vector({1, 10, 100, 1000});
  EXPECT_EQ(dot(big.a, IntVector{1, 10, 100, 1000}), 0);
  EXPECT_LE(max_abs(big.a), 10);
}

TEST(SmallOrthogonal, OptimalSupNorm) {
  Rng rng(84);
  for (int t = 0; t < 60; ++t) {
    IntVector q(static_cast<std::size_t>(testing::uniform(rng, 2, 3)));
    do {
      for (auto& x : q) x = testing::uniform(rng, -40, 40);
    } while (max_abs(q) == 0);
    auto r = small_orthogonal_vector(q);
    ASSERT_EQ(dot(r.a, q), 0);
    ASSERT_GT(max_abs(r.a), 0);
    // brute force the smallest sup norm
    long long best = 1000;
    const long long R = static_cast<long long>(max_abs(r.a));
    std::vector<long long> a(q.size(), -R);
    for (;;) {
      BigInt s = 0;
      long long norm = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        s += a[i] * q[i];
        norm = std::max(norm, std::llabs(a[i]));
      }
      if (s == 0 && norm > 0) best = std::min(best, norm);
      std::size_t i = 0;
      while (i < a.size() && a[i] == R) a[i++] = -R;
      if (i == a.size()) break;
      ++a[i];
    }
    ASSERT_EQ(best, R);
  }
}

}  // namespace
}  // namespace veronese
