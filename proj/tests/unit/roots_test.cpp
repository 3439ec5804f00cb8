#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"
#include "veronese/errors.hpp"
#include "veronese/roots.hpp"

namespace veronese {
namespace {

// Real root of an odd-degree polynomial with a sign change on [lo, hi].
double bisect(const IntPoly& p, double lo, double hi) {
  auto f = [&](long double x) {
    long double v = 0;
    for (int i = p.degree(); i >= 0; --i) v = v * x + to_long_double(p.coeff(static_cast<std::size_t>(i)));
    return v;
  };
  long double a = lo, b = hi;
  const bool rising = f(b) > 0;
  for (int it = 0; it < 200; ++it) {
    const long double m = (a + b) / 2;
    if ((f(m) > 0) == rising) b = m; else a = m;
  }
  return static_cast<double>((a + b) / 2);
}

TEST(Roots, SquareRootOfTwo) {
  auto rs = roots(IntPoly{-2, 0, 1}, 1e-9);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_NEAR(rs[0].center.real(), -std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(rs[1].center.real(), std::sqrt(2.0), 1e-9);
  for (const auto& r : rs) EXPECT_LE(r.radius, 1e-9);
}

TEST(Roots, FactoredCubic) {
  auto rs = roots(IntPoly{0, -1, 0, 1}, 1e-12);
  ASSERT_EQ(rs.size(), 3u);
  const double expected[] = {-1, 0, 1};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(rs[static_cast<std::size_t>(i)].center.real(), expected[i], 1e-12);
    EXPECT_NEAR(rs[static_cast<std::size_t>(i)].center.imag(), 0, 1e-12);
  }
}

TEST(Roots, OneRealTwoComplex) {
  const IntPoly p{7, 5, 3, 2};
  auto rs = roots(p, 1e-12);
  ASSERT_EQ(rs.size(), 3u);
  const double real_root = bisect(p, -3, 0);
  EXPECT_NEAR(real_root, -1.44553, 1e-5);
  int reals = 0;
  std::vector<std::complex<double>> complexes;
  for (const auto& r : rs) {
    if (std::fabs(r.center.imag()) <= r.radius) {
      ++reals;
      EXPECT_NEAR(r.center.real(), real_root, 1e-11);
    } else {
      complexes.push_back(r.center);
    }
  }
  EXPECT_EQ(reals, 1);
  ASSERT_EQ(complexes.size(), 2u);
  EXPECT_NEAR(complexes[0].real(), complexes[1].real(), 1e-11);
  EXPECT_NEAR(complexes[0].imag(), -complexes[1].imag(), 1e-11);
  // Vieta: sum of roots is -3/2.
  EXPECT_NEAR(real_root + complexes[0].real() + complexes[1].real(), -1.5, 1e-10);
}

TEST(Roots, RepeatedRootsCarryMultiplicity) {
  // (x - 1)^2 (x + 2) = x^3 - 3x + 2
  auto rs = roots(IntPoly{2, -3, 0, 1}, 1e-12);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_NEAR(rs[0].center.real(), -2, 1e-12);
  EXPECT_EQ(rs[0].multiplicity, 1);
  EXPECT_NEAR(rs[1].center.real(), 1, 1e-12);
  EXPECT_EQ(rs[1].multiplicity, 2);
  EXPECT_EQ(roots_with_multiplicity(IntPoly{2, -3, 0, 1}).size(), 3u);
  auto triple = roots(IntPoly{1, 3, 3, 1});
  ASSERT_EQ(triple.size(), 1u);
  EXPECT_EQ(triple[0].multiplicity, 3);
  EXPECT_NEAR(triple[0].center.real(), -1, 1e-12);
}

TEST(Roots, RejectsConstants) {
  EXPECT_THROW(roots(IntPoly{5}), InvalidInput);
  EXPECT_THROW(roots(IntPoly{}), InvalidInput);
}

TEST(Roots, RandomPolynomialsReconstructAndSeparate) {
  testing::Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    const int deg = static_cast<int>(testing::uniform(rng, 1, 6));
    IntPoly p = testing::random_poly(rng, deg, 20);
    auto rs = roots(p, 1e-12);
    int total = 0;
    for (const auto& r : rs) {
      total += r.multiplicity;
      ASSERT_LE(r.radius, 1e-12);
    }
    ASSERT_EQ(total, deg);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i + 1; j < rs.size(); ++j)
        ASSERT_GT(std::abs(rs[i].center - rs[j].center), rs[i].radius + rs[j].radius) << p.to_string();
    std::vector<std::complex<long double>> zs;
    for (const auto& r : roots_with_multiplicity(p, 1e-12))
      zs.emplace_back(r.center.real(), r.center.imag());
    auto c = testing::expand_roots(zs, to_long_double(p.leading()));
    for (int i = 0; i <= deg; ++i) {
      const long double expected = to_long_double(p.coeff(static_cast<std::size_t>(i)));
      ASSERT_NEAR(static_cast<double>(c[static_cast<std::size_t>(i)].real()), static_cast<double>(expected),
                  1e-6 * (1 + std::fabs(static_cast<double>(expected))))
          << p.to_string();
    }
  }
}

TEST(Roots, CloseRootsNeedHigherPrecision) {
  // (10^6 x - 1)(10^6 x - 1 - 1) has roots 1e-6 apart.
  IntPoly p = IntPoly{-1, 1000000} * IntPoly{-2, 1000000};
  p = p * IntPoly{-2, 0, 1};
  auto rs = roots(p, 1e-14);
  ASSERT_EQ(rs.size(), 4u);
  EXPECT_NEAR(rs[1].center.real(), 1e-6, 1e-14);
  EXPECT_NEAR(rs[2].center.real(), 2e-6, 1e-14);
  EXPECT_NEAR(rs[3].center.real(), std::sqrt(2.0), 1e-13);
}

}  // namespace
}  // namespace veronese
