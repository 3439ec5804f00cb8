#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "veronese/counting.hpp"
#include "veronese/errors.hpp"

namespace veronese {
namespace {

// Plain int loops with the textbook discriminant.
std::uint64_t oracle_count(long long H, long long D) {
  std::uint64_t n = 0;
  for (long long a = -H; a <= H; ++a) {
    if (a == 0) continue;
    for (long long b = -H; b <= H; ++b)
      for (long long c = -H; c <= H; ++c)
        for (long long d = -H; d <= H; ++d) {
          const long long disc = b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
          if (disc != 0 && std::llabs(disc) <= D) ++n;
        }
  }
  return n;
}

TEST(CountNhd, HeightOneMatchesOracle) {
  auto r = count_nhd(1, 1000);
  EXPECT_EQ(r.count, oracle_count(1, 1000));
  EXPECT_EQ(r.height, 1);
  EXPECT_EQ(r.disc_cap, 1000);
  EXPECT_EQ(r.symmetry_factor, 4);
}

TEST(CountNhd, ZeroCapIsEmpty) {
  EXPECT_EQ(count_nhd(5, 0).count, 0u);
  EXPECT_EQ(count_nhd_grid(3, {0, 10})[0].count, 0u);
}

TEST(CountNhd, SymmetricMatchesNaive) {
  const std::vector<long long> caps{1, 10, 1000};
  for (long long H = 1; H <= 6; ++H) {
    auto fast = count_nhd_grid(H, caps);
    auto slow = count_nhd_naive(H, caps);
    for (std::size_t k = 0; k < caps.size(); ++k) {
      ASSERT_EQ(fast[k].count, slow[k].count) << H << " " << caps[k];
      ASSERT_EQ(slow[k].symmetry_factor, 1);
    }
  }
  EXPECT_EQ(count_nhd(3, 500).count, oracle_count(3, 500));
}

TEST(CountNhd, MonotoneInCap) {
  auto rs = count_nhd_grid(6, {5, 50, 500, 5000, 50000});
  for (std::size_t k = 1; k < rs.size(); ++k) EXPECT_LE(rs[k - 1].count, rs[k].count);
  // every cubic of height 6 has |D| <= 54 H^4
  EXPECT_EQ(count_nhd(6, 54 * 6 * 6 * 6 * 6).count, oracle_count(6, 54 * 6 * 6 * 6 * 6));
}

TEST(CountNhd, GridOrderDoesNotMatter) {
  auto a = count_nhd_grid(5, {1000, 10, 100});
  auto b = count_nhd_grid(5, {10, 100, 1000});
  EXPECT_EQ(a[0].count, b[2].count);
  EXPECT_EQ(a[1].count, b[0].count);
  EXPECT_EQ(a[2].count, b[1].count);
}

TEST(CountNhd, ThreadCountDoesNotChangeCounts) {
  CountOptions one, many;
  one.threads = 1;
  many.threads = 5;
  auto a = count_nhd_grid(12, {10, 100, 1000, 10000}, one);
  auto b = count_nhd_grid(12, {10, 100, 1000, 10000}, many);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].count, b[k].count);
}

TEST(CountNhd, WideIntegerPathsAgree) {
  // The 128-bit and arbitrary-precision slices must agree with 64-bit ones.
  EXPECT_EQ(count_nhd(2, 300).count, oracle_count(2, 300));
}

TEST(CountNhd, BudgetIsEnforcedBeforeWork) {
  CountOptions opt;
  opt.budget = 1000;
  EXPECT_THROW(count_nhd(10, 100, opt), BudgetExceeded);
  EXPECT_THROW(count_nhd(0, 100), InvalidInput);
}

TEST(CountEquivalents, SeparatedCubicAtHeightOne) {
  auto r = count_equivalents(IntPoly{0, -1, 0, 1}, 1);
  ASSERT_TRUE(r.exact());
  EXPECT_GE(r.confirmed, 1u);
  // Oracle: forms of height 1 with D = 4 reachable by a small unimodular matrix.
  std::uint64_t expected = 0;
  for (long long a = -1; a <= 1; ++a) {
    if (a == 0) continue;
    for (long long b = -1; b <= 1; ++b)
      for (long long c = -1; c <= 1; ++c)
        for (long long d = -1; d <= 1; ++d) {
          IntPoly q{d, c, b, a};
          if (discriminant(q) != 4) continue;
          bool found = false;
          for (long long m0 = -3; m0 <= 3 && !found; ++m0)
            for (long long m1 = -3; m1 <= 3 && !found; ++m1)
              for (long long m2 = -3; m2 <= 3 && !found; ++m2)
                for (long long m3 = -3; m3 <= 3 && !found; ++m3) {
                  Mat2 m{m0, m1, m2, m3};
                  if (m.is_unimodular() && mobius_act_poly(m, IntPoly{0, -1, 0, 1}, 3) == q) found = true;
                }
          if (found) ++expected;
        }
  }
  EXPECT_EQ(r.confirmed, expected);
}

TEST(CountEquivalents, MonotoneInHeightAndFindsImages) {
  testing::Rng rng(71);
  const IntPoly p{-2, 0, 0, 1};
  std::uint64_t previous = 0;
  for (long long H = 1; H <= 6; ++H) {
    auto r = count_equivalents(p, H);
    ASSERT_TRUE(r.exact());
    ASSERT_GE(r.confirmed, previous);
    previous = r.confirmed;
  }
  // act(B, p) with height <= 6 must be among the confirmed forms
  for (int t = 0; t < 30; ++t) {
    Mat2 B = testing::random_unimodular(rng, 2);
    IntPoly q = mobius_act_poly(B, p, 3);
    if (q.degree() != 3 || height(q) > 6) continue;
    auto r = count_equivalents(q, 6);
    ASSERT_EQ(r.confirmed, previous);
  }
}

TEST(CountEquivalents, RejectsNonCubics) {
  EXPECT_THROW(count_equivalents(IntPoly{}, 3), InvalidInput);
  EXPECT_THROW(count_equivalents(IntPoly{1, 0, 0, 0, 1}, 3), InvalidInput);
}

TEST(FitExponents, RecoversExactPowerLaw) {
  std::vector<CountRecord> rs;
  for (long long H : {10, 20, 40})
    for (long long D : {100, 1000, 10000}) {
      CountRecord r;
      r.height = H;
      r.disc_cap = D;
      r.count = static_cast<std::uint64_t>(std::llround(static_cast<double>(H * H) * std::sqrt(static_cast<double>(D))));
      rs.push_back(r);
    }
  auto fit = fit_exponents(rs);
  EXPECT_NEAR(fit.alpha_h, 2.0, 1e-3);
  EXPECT_NEAR(fit.alpha_d, 0.5, 1e-3);
  EXPECT_NEAR(fit.constant, 1.0, 1e-2);
}

TEST(FitExponents, TotalCountGrowsLikeFourthPower) {
  std::vector<double> hs, ns;
  for (long long H : {10, 20, 40}) {
    hs.push_back(static_cast<double>(H));
    ns.push_back(static_cast<double>(count_nhd(H, 54 * H * H * H * H).count));
  }
  EXPECT_NEAR(fit_power_law(hs, ns).slope, 4.0, 0.1);
}

TEST(FitExponents, RejectsDegenerateSpread) {
  std::vector<CountRecord> rs(2);
  rs[0] = {10, 100, 5, 0, 4};
  rs[1] = {20, 100, 9, 0, 4};
  EXPECT_THROW(fit_exponents(rs), InvalidInput);
}

}  // namespace
}  // namespace veronese
