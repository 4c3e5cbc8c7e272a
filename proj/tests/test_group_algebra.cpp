#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "lfin/errors.hpp"
#include "lfin/group_algebra.hpp"
#include "lfin/random.hpp"
#include "support.hpp"

using namespace lfin;
namespace ts = testing_support;

namespace {

GroupRingElement el(const GroupPtr& g, std::vector<long long> c) { return ga_from_coeffs(*g, c); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(BuildGroup, CyclicTwo) {
  const auto g = build_group("cyclic:2", 2);
  EXPECT_EQ(g->order(), 2u);
  EXPECT_EQ(g->mul(1, 1), 0u);
  EXPECT_EQ(g->descriptor(), "cyclic:2");
}

TEST(BuildGroup, RejectsNonLGroup) {
  EXPECT_EQ(code_of([] { build_group("cyclic:6", 2); }), ErrorCode::NotAnLGroup);
}

TEST(BuildGroup, KleinFour) {
  const auto g = build_group("product:cyclic:2,cyclic:2", 2);
  EXPECT_EQ(g->order(), 4u);
  EXPECT_TRUE(g->is_abelian());
  for (std::size_t a = 0; a < 4; ++a) EXPECT_EQ(g->mul(a, a), g->identity());
}

TEST(BuildGroup, ExplicitTable) {
  const auto g = build_group("table:{0 1 2;1 2 0;2 0 1}", 3);
  EXPECT_EQ(g->order(), 3u);
  EXPECT_TRUE(*g == *cyclic_group(3, 3));
}

TEST(BuildGroup, RejectsNonAssociativeTable) {
  EXPECT_EQ(code_of([] { build_group("table:{0 1;1 1}", 2); }), ErrorCode::NotAGroup);
}

TEST(BuildGroup, RejectsCompositePrime) {
  EXPECT_EQ(code_of([] { build_group("cyclic:4", 4); }), ErrorCode::NotAPrime);
}

TEST(BuildGroup, TrivialGroupIsAnLGroup) {
  const auto g = build_group("cyclic:1", 5);
  EXPECT_EQ(g->order(), 1u);
}

TEST(GroupRing, Products) {
  const auto c2 = cyclic_group(2, 2);
  EXPECT_EQ(ga_mul(el(c2, {1, 0}), el(c2, {0, 1}), *c2), el(c2, {0, 1}));
  EXPECT_TRUE(ga_is_zero(ga_mul(el(c2, {1, 1}), el(c2, {1, 1}), *c2)));
  const auto c3 = cyclic_group(3, 3);
  EXPECT_EQ(ga_mul(el(c3, {1, 1, 0}), el(c3, {1, 1, 1}), *c3), el(c3, {2, 2, 2}));
}

TEST(GroupRing, Augmentation) {
  const auto c2 = cyclic_group(2, 2);
  const auto c3 = cyclic_group(3, 3);
  EXPECT_EQ(augmentation(ga_one(*c3), *c3), 1u);
  EXPECT_EQ(augmentation(el(c2, {1, 1}), *c2), 0u);
  EXPECT_EQ(augmentation(el(c3, {2, 1, 2}), *c3), 2u);
}

TEST(GroupRing, UnitsAndInverses) {
  const auto c2 = cyclic_group(2, 2);
  const auto c3 = cyclic_group(3, 3);
  EXPECT_TRUE(is_unit(el(c2, {0, 1}), *c2));
  EXPECT_FALSE(is_unit(el(c2, {1, 1}), *c2));
  EXPECT_TRUE(is_unit(el(c3, {1, 1, 0}), *c3));
  EXPECT_EQ(ga_inverse(el(c3, {0, 1, 0}), *c3), el(c3, {0, 0, 1}));
  EXPECT_EQ(ga_inverse(ga_one(*c3), *c3), ga_one(*c3));
  EXPECT_EQ(ga_inverse(el(c3, {1, 1, 0}), *c3), el(c3, {2, 1, 2}));
  EXPECT_EQ(code_of([&] { ga_inverse(el(c2, {1, 1}), *c2); }), ErrorCode::NotAUnit);
}

// Exhaustive over every element for the groups small enough to search
// literally for an inverse.
TEST(GroupRing, UnitMatchesLiteralInverseSearch) {
  for (const auto& [name, g] : ts::small_l_groups()) {
    if (g->order() > 8 || (g->prime() == 3 && g->order() > 3)) continue;
    const std::size_t n = g->order();
    std::vector<Fl> x(n, 0);
    for (;;) {
      GroupRingElement a{x};
      ASSERT_EQ(is_unit(a, *g), ts::has_inverse_by_search(*g, x)) << name;
      std::size_t i = 0;
      while (i < n && ++x[i] == g->prime()) x[i++] = 0;
      if (i == n) break;
    }
  }
}

TEST(GroupRing, InverseIsTwoSidedOnRandomUnits) {
  std::mt19937_64 rng(7);
  for (const auto& [name, g] : ts::small_l_groups()) {
    for (int k = 0; k < 40; ++k) {
      const auto u = random_unit(*g, rng);
      const auto v = ga_inverse(u, *g);
      EXPECT_EQ(ga_mul(u, v, *g), ga_one(*g)) << name;
      EXPECT_EQ(ga_mul(v, u, *g), ga_one(*g)) << name;
    }
  }
}

TEST(GroupRing, RadicalElementsAreNilpotent) {
  std::mt19937_64 rng(8);
  for (const auto& [name, g] : ts::small_l_groups()) {
    const auto r = random_radical_element(*g, rng);
    auto power = r;
    for (std::size_t k = 1; k < g->order(); ++k) power = ga_mul(power, r, *g);
    EXPECT_TRUE(ga_is_zero(power)) << name;
  }
}

TEST(GroupRing, RingAxiomsOnRandomElements) {
  std::mt19937_64 rng(9);
  for (const auto& [name, g] : ts::small_l_groups()) {
    for (int k = 0; k < 10; ++k) {
      const auto a = random_element(*g, rng), b = random_element(*g, rng), c = random_element(*g, rng);
      EXPECT_EQ(ga_mul(ga_mul(a, b, *g), c, *g), ga_mul(a, ga_mul(b, c, *g), *g)) << name;
      EXPECT_EQ(ga_mul(a, ga_add(b, c, *g), *g), ga_add(ga_mul(a, b, *g), ga_mul(a, c, *g), *g)) << name;
      EXPECT_EQ(augmentation(ga_mul(a, b, *g), *g), fl_mul(augmentation(a, *g), augmentation(b, *g), g->prime()));
    }
  }
}

TEST(GroupCatalogue, HasTheExpectedSizes) {
  std::map<std::pair<std::size_t, Fl>, int> count;
  for (const auto& [name, g] : ts::small_l_groups()) ++count[{g->order(), g->prime()}];
  EXPECT_EQ((count[{8, 2}]), 5);
  EXPECT_EQ((count[{16, 2}]), 14);
  EXPECT_EQ((count[{27, 3}]), 5);
}

TEST(GroupRingMatrix, ComposeMatchesExpandedProduct) {
  std::mt19937_64 rng(10);
  for (const auto& [name, g] : ts::small_l_groups()) {
    if (g->order() > 16) continue;
    const auto a = random_matrix(2, 3, *g, rng), b = random_matrix(3, 2, *g, rng);
    EXPECT_EQ(expand(compose(a, b, *g), *g), expand(a, *g) * expand(b, *g)) << name;
  }
}

TEST(GroupRingMatrix, RandomInvertibleHasInverse) {
  std::mt19937_64 rng(11);
  const auto g = build_group("product:cyclic:4,cyclic:2", 2);
  for (int k = 0; k < 20; ++k) {
    const auto [p, q] = random_invertible(3, *g, rng);
    EXPECT_EQ(compose(p, q, *g), GroupRingMatrix::identity(3, *g));
    EXPECT_EQ(compose(q, p, *g), GroupRingMatrix::identity(3, *g));
  }
}
