#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "test_support.hpp"
#include "veronese/classes.hpp"
#include "veronese/errors.hpp"

namespace veronese {
namespace {

using testing::Rng;

TEST(Reduce, RationalRootGoesToInfinity) {
  // x^3 - x has H_d = 1; sending the root 0 to infinity leaves x^2 - 1, also
  // H_d = 1 and smaller in the tie order
  auto r = reduce_min_hd(IntPoly{0, -1, 0, 1});
  EXPECT_EQ(r.hd.fourth_power, 1);
  EXPECT_EQ(r.representative, (IntPoly{-1, 0, 1}));
  EXPECT_EQ(mobius_act_poly(r.witness, IntPoly{0, -1, 0, 1}, 3), r.representative);
}

TEST(Reduce, TripleRootGoesToInfinity) {
  auto r = reduce_min_hd(IntPoly{1, 3, 3, 1});
  EXPECT_EQ(r.representative, (IntPoly{1}));
  EXPECT_EQ(r.hd.fourth_power, 0);
  EXPECT_TRUE(r.witness.is_unimodular());
}

TEST(Reduce, IrreducibleKeepsCubicTerm) {
  // x^3 - 2 has no rational root, so c3 != 0 in every member of its class
  auto r = reduce_min_hd(IntPoly{-2, 0, 0, 1});
  EXPECT_EQ(r.representative.degree(), 3);
  EXPECT_EQ(mobius_act_poly(r.witness, IntPoly{-2, 0, 0, 1}, 3), r.representative);
}

TEST(Reduce, RoundTripFromRandomMatrices) {
  Rng rng(61);
  const IntPoly base{-1, 0, 1};
  for (int t = 0; t < 200; ++t) {
    Mat2 B = testing::random_unimodular(rng, 5);
    IntPoly p = mobius_act_poly(B, base, 3);
    auto r = reduce_min_hd(p);
    ASSERT_EQ(r.hd.fourth_power, 1) << p.to_string();
    ASSERT_EQ(r.representative, base) << p.to_string();
  }
}

TEST(Reduce, QuadraticInputKeepsDiscriminant) {
  auto r = reduce_min_hd(IntPoly{1, 2, 3});
  EXPECT_EQ(mobius_act_poly(r.witness, IntPoly{1, 2, 3}, 3), r.representative);
  EXPECT_EQ(form_discriminant(r.representative, 3), form_discriminant(IntPoly{1, 2, 3}, 3));
}

TEST(Reduce, WitnessAndMonotoneHeight) {
  Rng rng(62);
  for (int t = 0; t < 500; ++t) {
    IntPoly p = testing::random_poly(rng, 3, 30);
    if (t % 5 == 0) p = testing::random_poly(rng, 2, 30);
    auto r = reduce_min_hd(p);
    ASSERT_TRUE(r.witness.is_unimodular());
    ASSERT_EQ(mobius_act_poly(r.witness, p, 3), r.representative);
    ASSERT_LE(r.hd, height_d(p));
    ASSERT_GT(r.representative.coeff(r.representative.degree()), 0);
    ASSERT_EQ(form_discriminant(r.representative, 3), form_discriminant(p, 3));
  }
}

TEST(Reduce, SameClassAfterRandomAction) {
  Rng rng(63);
  for (int t = 0; t < 200; ++t) {
    IntPoly p = testing::random_poly(rng, 3, 15);
    if (discriminant(p) == 0) continue;
    Mat2 B = testing::random_unimodular(rng, 5);
    auto r1 = reduce_min_hd(p);
    auto r2 = reduce_min_hd(mobius_act_poly(B, p, 3));
    ASSERT_EQ(r1.hd, r2.hd) << p.to_string() << " " << B.to_string();
    ASSERT_EQ(equivalent(r1.representative, r2.representative, 8).verdict, Verdict::equivalent) << p.to_string();
  }
}

TEST(RootSeparation, Examples) {
  EXPECT_TRUE(check_root_separation(IntPoly{0, -1, 0, 1}, 0.5));
  EXPECT_FALSE(check_root_separation(IntPoly{0, -1, 0, 1}, 1.5));
  // (x - 1)^3 + 1 has roots 1 - w for the cube roots of unity w: gaps sqrt(3)
  EXPECT_TRUE(check_root_separation(IntPoly{0, 3, -3, 1}, 0.5));
  EXPECT_FALSE(check_root_separation(IntPoly{0, 3, -3, 1}, 2.0));
  // (100x - 1)^3 + 1 clusters near 1/100
  EXPECT_FALSE(check_root_separation(IntPoly{0, 300, -30000, 1000000}, 0.5));
  EXPECT_THROW(check_root_separation(IntPoly{1, 3, 3, 1}, 0.5), InvalidInput);
  auto gap = min_root_gap(IntPoly{0, -1, 0, 1});
  EXPECT_NEAR(gap.lower, 1.0, 1e-9);
  EXPECT_NEAR(gap.upper, 1.0, 1e-9);
}

TEST(Equivalent, ByConstruction) {
  Rng rng(64);
  for (int t = 0; t < 200; ++t) {
    IntPoly p = testing::random_poly(rng, 3, 10);
    Mat2 B = testing::random_unimodular(rng, 4);
    IntPoly q = mobius_act_poly(B, p, 3);
    auto res = equivalent(p, q, 8);
    ASSERT_EQ(res.verdict, Verdict::equivalent) << p.to_string() << " " << B.to_string();
    ASSERT_TRUE(res.witness.is_unimodular());
    ASSERT_EQ(mobius_act_poly(res.witness, p, 3), q);
  }
}

TEST(Equivalent, DiscriminantMismatch) {
  auto res = equivalent(IntPoly{-2, 0, 0, 1}, IntPoly{-3, 0, 0, 1}, 8);
  EXPECT_EQ(res.verdict, Verdict::not_equivalent);
  EXPECT_EQ(to_string(res.verdict), "not_equivalent");
}

TEST(Equivalent, InvariantsSeparateEqualDiscriminants) {
  EXPECT_EQ(equivalent(IntPoly{0, -1, 0, 1}, IntPoly{0, -1, 0, 1}, 2).verdict, Verdict::equivalent);
  // D = 64 against D = 256
  EXPECT_EQ(equivalent(IntPoly{0, -2, 0, 2}, IntPoly{0, -4, 0, 1}, 8).verdict, Verdict::not_equivalent);
}

// Independent partition of the height-1 cubics: union-find over all pairs
// joined by some unimodular matrix with entries <= 4.
std::vector<std::set<std::vector<BigInt>>> oracle_partition(int height_cap, long long disc_cap) {
  std::vector<IntPoly> forms;
  for (long long c3 = -height_cap; c3 <= height_cap; ++c3) {
    if (c3 == 0) continue;
    for (long long c2 = -height_cap; c2 <= height_cap; ++c2)
      for (long long c1 = -height_cap; c1 <= height_cap; ++c1)
        for (long long c0 = -height_cap; c0 <= height_cap; ++c0) {
          IntPoly p{c0, c1, c2, c3};
          const BigInt d = discriminant(p);
          if (d != 0 && abs(d) <= disc_cap) forms.push_back(p);
        }
  }
  std::vector<Mat2> mats;
  for (long long a = -4; a <= 4; ++a)
    for (long long b = -4; b <= 4; ++b)
      for (long long c = -4; c <= 4; ++c)
        for (long long d = -4; d <= 4; ++d) {
          Mat2 m{a, b, c, d};
          if (m.is_unimodular()) mats.push_back(m);
        }
  std::map<std::vector<BigInt>, std::size_t> index;
  for (std::size_t i = 0; i < forms.size(); ++i) index[forms[i].coeffs()] = i;
  std::vector<std::size_t> parent(forms.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (const auto& m : mats) {
      IntPoly q = mobius_act_poly(m, forms[i], 3);
      auto it = index.find(q.coeffs());
      if (it != index.end()) parent[find(i)] = find(it->second);
    }
  std::map<std::size_t, std::set<std::vector<BigInt>>> groups;
  for (std::size_t i = 0; i < forms.size(); ++i) groups[find(i)].insert(forms[i].coeffs());
  std::vector<std::set<std::vector<BigInt>>> out;
  for (auto& [k, g] : groups) out.push_back(std::move(g));
  return out;
}

TEST(EnumerateClasses, HeightOneMatchesPairwiseOracle) {
  ClassOptions opt;
  opt.threads = 1;
  auto census = enumerate_classes(1, 1000, opt);
  EXPECT_EQ(census.unresolved_pairs, 0u);
  // Every height-1 form joins the class of its reduced key; the oracle
  // groups forms by direct matrix connections inside the same set.
  auto oracle = oracle_partition(1, 1000);
  std::map<std::vector<BigInt>, std::size_t> class_of;
  for (std::size_t k = 0; k < census.classes.size(); ++k) {
    const auto& rec = census.classes[k];
    for (const auto& [member, w] : rec.witnesses) ASSERT_EQ(mobius_act_poly(w, member, 3), rec.canonical);
  }
  for (const auto& group : oracle) {
    std::set<std::vector<BigInt>> keys;
    for (const auto& c : group) keys.insert(reduce_min_hd(IntPoly(c)).representative.coeffs());
    std::set<std::size_t> ids;
    for (const auto& key : keys) {
      for (std::size_t k = 0; k < census.classes.size(); ++k)
        if (census.classes[k].canonical.coeffs() == key) ids.insert(k);
    }
    ASSERT_EQ(ids.size(), 1u);
  }
  std::uint64_t members = 0;
  for (const auto& rec : census.classes) members += rec.members_found;
  std::size_t forms = 0;
  for (const auto& g : oracle) forms += g.size();
  EXPECT_EQ(members, forms);
  EXPECT_EQ(census.classes.size(), oracle.size());
}

TEST(EnumerateClasses, DiscriminantConstantOnClasses) {
  ClassOptions opt;
  opt.threads = 2;
  auto census = enumerate_classes(4, 200, opt);
  std::size_t total = 0;
  for (const auto& rec : census.classes) {
    ASSERT_EQ(form_discriminant(rec.canonical, 3), rec.discriminant);
    for (const auto& [member, w] : rec.witnesses) {
      ASSERT_EQ(discriminant(member), rec.discriminant);
      ASSERT_EQ(mobius_act_poly(w, member, 3), rec.canonical);
    }
  }
  for (const auto& [d, h] : census.histogram) total += h;
  EXPECT_EQ(total, census.classes.size());
  EXPECT_EQ(total_classes(census), total);
}

TEST(EnumerateClasses, ThreadCountDoesNotChangeResult) {
  ClassOptions one, many;
  one.threads = 1;
  many.threads = 4;
  auto a = enumerate_classes(3, 300, one), b = enumerate_classes(3, 300, many);
  ASSERT_EQ(a.classes.size(), b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    EXPECT_EQ(a.classes[i].canonical, b.classes[i].canonical);
    EXPECT_EQ(a.classes[i].members_found, b.classes[i].members_found);
  }
  EXPECT_EQ(a.histogram, b.histogram);
}

TEST(EnumerateClasses, RejectsBadCaps) { EXPECT_THROW(enumerate_classes(0, 10), InvalidInput); }

}  // namespace
}  // namespace veronese
