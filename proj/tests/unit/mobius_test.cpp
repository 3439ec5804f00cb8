#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "veronese/errors.hpp"
#include "veronese/lattice.hpp"
#include "veronese/mobius.hpp"
#include "veronese/roots.hpp"

namespace veronese {
namespace {

using testing::Rng;

BigInt binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficient transforms printed for cubics, with (a, b, c, d) the paper's matrix.
IntPoly printed_cubic_transform(const IntPoly& p, const BigInt& a, const BigInt& b, const BigInt& c,
                                const BigInt& d) {
  const BigInt c0 = p.coeff(0), c1 = p.coeff(1), c2 = p.coeff(2), c3 = p.coeff(3);
  return IntPoly(IntVector{
      c * c * c * c0 - c * c * d * c1 + c * d * d * c2 - d * d * d * c3,
      -3 * a * c * c * c0 + (2 * a * c * d + b * c * c) * c1 - (2 * b * c * d + a * d * d) * c2 + 3 * b * d * d * c3,
      3 * a * a * c * c0 - (2 * a * b * c + a * a * d) * c1 + (2 * a * b * d + b * b * c) * c2 - 3 * b * b * d * c3,
      -a * a * a * c0 + a * a * b * c1 - a * b * b * c2 + b * b * b * c3});
}

TEST(Phi, IdentityMapsToIdentity) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(phi(n, Mat2::identity()), IntMatrix::identity(static_cast<std::size_t>(n) + 1));
}

TEST(Phi, LowerUnipotentGivesBinomials) {
  const Mat2 c1{1, 0, 1, 1};
  for (int n = 1; n <= 8; ++n) {
    IntMatrix m = phi(n, c1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        EXPECT_EQ(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), binom(n - i, j - i)) << n << " " << i << " " << j;
  }
}

TEST(Phi, DegreeOne) {
  IntMatrix m = phi(1, Mat2{2, 3, 5, 7});
  EXPECT_EQ(m, IntMatrix::from_rows({{7, 5}, {3, 2}}));
}

TEST(Phi, RejectsNonPositiveDegree) { EXPECT_THROW(phi(0, Mat2::identity()), InvalidInput); }

TEST(Phi, Homomorphism) {
  Rng rng(41);
  for (int t = 0; t < 400; ++t) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 8));
    Mat2 A = testing::random_matrix(rng, 10), B = testing::random_matrix(rng, 10);
    ASSERT_EQ(phi(n, A * B), phi(n, A) * phi(n, B)) << A.to_string() << " " << B.to_string();
  }
}

TEST(Phi, SpecialLinearDeterminantIsOne) {
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 8));
    Mat2 B = testing::random_sl2_word(rng, 12);
    ASSERT_EQ(B.det(), 1);
    ASSERT_EQ(determinant(phi(n, B)), 1);
  }
}

TEST(Phi, BinomialSumMatchesExpansion) {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 8));
    Mat2 B = testing::random_matrix(rng, 10);
    ASSERT_EQ(phi_binomial_sum(n, B), phi(n, B));
  }
}

TEST(MobiusAct, ShiftAndReversal) {
  EXPECT_EQ(mobius_act_poly(Mat2{1, 1, 0, 1}, IntPoly{0, 0, 1}, 2), (IntPoly{1, 2, 1}));
  EXPECT_EQ(mobius_act_poly(Mat2{0, 1, 1, 0}, IntPoly{3, 2, 1}, 2), (IntPoly{1, 2, 3}));
  EXPECT_THROW(mobius_act_poly(Mat2{1, 2, 2, 4}, IntPoly{0, 1}, 1), InvalidInput);
}

TEST(MobiusAct, MatchesPrintedCubicTransforms) {
  Rng rng(44);
  EXPECT_EQ(mobius_act_poly(Mat2{1, -1, -2, 1}, IntPoly{-2, 0, 0, 1}, 3),
            printed_cubic_transform(IntPoly{-2, 0, 0, 1}, 2, 1, 1, 1));
  for (int t = 0; t < 300; ++t) {
    IntPoly p = testing::random_poly(rng, 3, 20);
    Mat2 B = testing::random_unimodular(rng, 5);
    ASSERT_EQ(mobius_act_poly(Mat2{B.b, -B.d, -B.a, B.c}, p, 3), printed_cubic_transform(p, B.a, B.b, B.c, B.d));
  }
}

TEST(MobiusAct, RightActionComposition) {
  Rng rng(45);
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 5));
    IntPoly p = testing::random_poly(rng, n, 10);
    Mat2 B1 = testing::random_matrix(rng, 4), B2 = testing::random_matrix(rng, 4);
    if (B1.det() == 0 || B2.det() == 0) continue;
    ASSERT_EQ(mobius_act_poly(B2, mobius_act_poly(B1, p, n), n), mobius_act_poly(B1 * B2, p, n));
  }
}

TEST(MobiusAct, PreservesDiscriminant) {
  Rng rng(46);
  for (int t = 0; t < 500; ++t) {
    IntPoly p = testing::random_poly(rng, 3, 20);
    Mat2 B = testing::random_unimodular(rng, 5);
    ASSERT_EQ(form_discriminant(mobius_act_poly(B, p, 3), 3), discriminant(p));
  }
  IntPoly quad{1, 2, 3};
  ASSERT_EQ(form_discriminant(mobius_act_poly(Mat2{0, 1, 1, 0}, quad, 3), 3), form_discriminant(quad, 3));
}

TEST(MobiusAct, RootsMoveByInverseMap) {
  Rng rng(47);
  int checked = 0;
  while (checked < 200) {
    IntPoly p = testing::random_poly(rng, 3, 20);
    if (discriminant(p) == 0) continue;
    Mat2 B = testing::random_unimodular(rng, 4);
    IntPoly r = mobius_act_poly(B, p, 3);
    if (r.degree() != 3) continue;
    auto src = roots(p, 1e-13);
    auto dst = roots(r, 1e-13);
    const std::complex<double> a(to_double(B.a)), b(to_double(B.b)), c(to_double(B.c)), d(to_double(B.d));
    for (const auto& root : src) {
      const std::complex<double> y = root.center;
      const std::complex<double> den = -c * y + a;
      if (std::abs(den) < 1e-6) continue;
      const std::complex<double> image = (d * y - b) / den;
      double best = 1e300;
      for (const auto& s : dst) best = std::min(best, std::abs(s.center - image));
      ASSERT_LT(best, 1e-8 * (1 + std::abs(image))) << p.to_string() << " " << B.to_string();
    }
    ++checked;
  }
}

TEST(Transport, IdentityAndLinearity) {
  Rng rng(48);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 6));
    IntVector p(static_cast<std::size_t>(n) + 1), p2(p.size());
    for (auto& x : p) x = testing::uniform(rng, -1000, 1000);
    for (auto& x : p2) x = testing::uniform(rng, -1000, 1000);
    ASSERT_EQ(transport_approx(Mat2::identity(), p), p);
    Mat2 B = testing::random_matrix(rng, 6);
    IntVector sum(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) sum[i] = p[i] + p2[i];
    IntVector lhs = transport_approx(B, sum), a = transport_approx(B, p), b = transport_approx(B, p2);
    for (std::size_t i = 0; i < p.size(); ++i) ASSERT_EQ(lhs[i], a[i] + b[i]);
  }
}

TEST(Transport, VeroneseCurveMapsToCurve) {
  Rng rng(49);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 6));
    const BigInt u = testing::uniform(rng, -30, 30);
    Mat2 B = testing::random_matrix(rng, 6);
    IntVector p;
    for (int i = 0; i <= n; ++i) p.push_back(ipow(u, static_cast<unsigned>(i)));
    const BigInt num = B.a * u + B.b, den = B.c * u + B.d;
    IntVector expected;
    for (int i = 0; i <= n; ++i)
      expected.push_back(ipow(num, static_cast<unsigned>(i)) * ipow(den, static_cast<unsigned>(n - i)));
    ASSERT_EQ(transport_approx(B, p), expected);
  }
}

TEST(Transport, ShiftUsesBinomialRows) {
  // sqrt(2) approximants with q0 = 985: p_i = round(985 * sqrt(2)^i)
  const IntVector p{985, 1393, 1970};
  const IntVector q = transport_approx(Mat2{1, 1, 0, 1}, p);
  EXPECT_EQ(q, (IntVector{985, 985 + 1393, 985 + 2 * 1393 + 1970}));
  const double x1 = std::sqrt(2.0) + 1;
  EXPECT_LT(std::fabs(985 * x1 - to_double(q[1])), 1e-3);
  EXPECT_LT(std::fabs(985 * x1 * x1 - to_double(q[2])), 3e-3);
}

TEST(SubspaceMap, Identity) {
  EXPECT_EQ(subspace_map(Mat2::identity(), IntVector{3, -1, 2}), (IntVector{3, -1, 2}));
  EXPECT_THROW(subspace_map(Mat2{2, 0, 0, 1}, IntVector{1, 1}), InvalidInput);
}

TEST(SubspaceMap, LineThroughOnes) {
  Rng rng(50);
  for (int t = 0; t < 100; ++t) {
    Mat2 B = testing::random_unimodular(rng, 5);
    const IntVector b = subspace_map(B, IntVector{-1, 1});
    const IntVector image = phi(3, B).apply(IntVector(4, 1));
    ASSERT_TRUE(in_subspace(b, image));
  }
}

TEST(SubspaceMap, HyperplaneRootsFollowMobius) {
  Rng rng(51);
  int checked = 0;
  while (checked < 100) {
    IntPoly pa = testing::random_poly(rng, 3, 10);
    if (discriminant(pa) == 0) continue;
    Mat2 B = testing::random_unimodular(rng, 3);
    IntPoly pb(subspace_map(B, pa.coeffs()));
    if (pb.degree() != 3) continue;
    const std::complex<double> a(to_double(B.a)), b(to_double(B.b)), c(to_double(B.c)), d(to_double(B.d));
    auto target = roots(pb, 1e-13);
    for (const auto& r : roots(pa, 1e-13)) {
      const std::complex<double> den = c * r.center + d;
      if (std::abs(den) < 1e-6) continue;
      const std::complex<double> image = (a * r.center + b) / den;
      double best = 1e300;
      for (const auto& s : target) best = std::min(best, std::abs(s.center - image));
      ASSERT_LT(best, 1e-8 * (1 + std::abs(image)));
    }
    ++checked;
  }
}

TEST(SubspaceMap, IntegerPointsLandInImage) {
  Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    const int h = static_cast<int>(testing::uniform(rng, 1, 2));
    IntVector a(static_cast<std::size_t>(h) + 1);
    do {
      for (auto& x : a) x = testing::uniform(rng, -4, 4);
    } while (max_abs(a) == 0);
    Mat2 B = testing::random_unimodular(rng, 4);
    const IntVector b = subspace_map(B, a);
    const IntMatrix P = phi(3, B);
    const auto pts = points_in_cube(integer_kernel(subspace_equations(a, 3)), 6);
    ASSERT_FALSE(pts.empty());
    for (const auto& v : pts) {
      ASSERT_TRUE(in_subspace(a, v));
      ASSERT_TRUE(in_subspace(b, P.apply(v)));
    }
  }
}

}  // namespace
}  // namespace veronese
