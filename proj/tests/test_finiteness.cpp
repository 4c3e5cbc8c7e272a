#include <gtest/gtest.h>

#include <random>

#include "lfin/cw_equivariant.hpp"
#include "lfin/errors.hpp"
#include "lfin/finiteness.hpp"
#include "support.hpp"

using namespace lfin;
namespace ts = testing_support;

namespace {

GroupRingMatrix one_by_one(const GroupTable& g, std::vector<long long> c) {
  GroupRingMatrix m(1, 1, g);
  m.set(0, 0, ga_from_coeffs(g, c));
  return m;
}

// Cone homology of an approximation, per degree.
std::vector<std::size_t> cone_dims(const FreeApproximation& a) { return homology_dims(mapping_cone(a.map)); }

}  // namespace

TEST(FreeApproximation, ZeroComplex) {
  const auto g = cyclic_group(2, 2);
  const auto a = free_approximation(ChainComplex::zero(g), 0);
  EXPECT_TRUE(a.free.trimmed().empty());
}

TEST(FreeApproximation, SingleModule) {
  const auto g = cyclic_group(3, 3);
  const auto c = ChainComplex::single(g, 0, 1);
  const auto a = free_approximation(c, 1);
  EXPECT_EQ(a.free.trimmed(), c);
  for (auto d : cone_dims(a)) EXPECT_EQ(d, 0u);
}

TEST(FreeApproximation, ConeHomologyOnlyInTopDegree) {
  const auto c = chains_of_cover(lens_complex(2, 2, 2));
  const auto a = free_approximation(c, 3);
  const auto cone = mapping_cone(a.map);
  const auto dims = homology_dims(cone);
  for (int q = cone.bottom(); q <= cone.top(); ++q)
    if (q != 3) EXPECT_EQ(dims[q - cone.bottom()], 0u) << q;
  EXPECT_LE(a.free.top(), 2);
}

TEST(FreeApproximation, RejectsHomologyAboveTheBound) {
  const auto c = chains_of_cover(lens_complex(2, 1, 2));
  try {
    free_approximation(c, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedHomology);
  }
}

TEST(DecidePerfect, TwoTermComplex) {
  const auto g = cyclic_group(2, 2);
  const ChainComplex c(g, 0, {1, 1}, {one_by_one(*g, {1, 1})});
  const auto v = decide_perfect(c);
  EXPECT_TRUE(v.perfect);
  EXPECT_EQ(v.replacement->ranks(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(*v.euler_class, 0);
}

TEST(DecidePerfect, LensComplexesWithWitness) {
  for (unsigned l : {2u, 3u})
    for (unsigned n = 0; n <= 4; ++n) {
      const auto c = chains_of_cover(lens_complex(l, 1, n));
      const auto v = decide_perfect(c);
      ASSERT_TRUE(v.perfect);
      EXPECT_EQ(*v.euler_class, n % 2 == 0 ? 1 : 0);
      EXPECT_TRUE(is_quasi_iso(*v.witness));
      EXPECT_TRUE(is_quasi_iso(chain_witness(v, c)));
      EXPECT_TRUE(is_minimal(*v.replacement));
    }
}

TEST(DecidePerfect, TrivialModuleIsNotPerfect) {
  // Homology F_2 in degree 0, given as a complex of modules.
  const auto g = cyclic_group(2, 2);
  const ModuleComplex m(g, 0, {PiModule::trivial(g, 1)}, {});
  const auto v = decide_perfect(m);
  EXPECT_FALSE(v.perfect);
  EXPECT_EQ(*v.top_degree, 0);
  EXPECT_EQ(v.top_obstruction.dim(), 1u);
  EXPECT_FALSE(is_free(v.top_obstruction).free);
}

TEST(DecidePerfect, GoodTruncationOfResolutionIsNotPerfect) {
  for (const char* d : {"cyclic:2", "cyclic:4", "product:cyclic:2,cyclic:2"}) {
    const auto g = build_group(d, 2);
    const auto res = minimal_resolution(PiModule::trivial(g, 1), 3);
    // Bounded and free, hence perfect; truncating at 0 leaves F_2.
    EXPECT_TRUE(decide_perfect(res.complex).perfect) << d;
    const auto w = decide_perfect(good_truncation(as_module_complex(res.complex), 0));
    EXPECT_FALSE(w.perfect) << d;
    EXPECT_EQ(w.top_obstruction, PiModule::trivial(g, 1)) << d;
  }
}

TEST(DecidePerfect, PaddingPreservesEulerClass) {
  const auto c = chains_of_cover(lens_complex(3, 1, 2));
  const auto base = decide_perfect(c);
  auto padded = c;
  for (int k = 1; k <= 3; ++k) padded = direct_sum(padded, cone_of_identity(ChainComplex::single(c.group(), k - 1, k)));
  const auto v = decide_perfect(padded);
  EXPECT_TRUE(v.perfect);
  EXPECT_EQ(*v.euler_class, *base.euler_class);
}

TEST(DecidePerfect, MaxDegree) {
  const auto c = chains_of_cover(lens_complex(2, 1, 4));
  DecideOptions o;
  o.max_degree = 2;
  try {
    decide_perfect(c, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MaxDegree);
  }
}

TEST(DecidePerfect, RandomRoundtrip) {
  std::mt19937_64 rng(41);
  for (const char* d : {"cyclic:2", "cyclic:4", "product:cyclic:2,cyclic:2", "cyclic:3"}) {
    const auto g = build_group(d, std::string(d) == "cyclic:3" ? 3 : 2);
    for (int k = 0; k < 8; ++k) {
      const auto s = ts::random_perfect(g, rng);
      const auto v = decide_perfect(s.complex);
      ASSERT_TRUE(v.perfect) << d;
      EXPECT_TRUE(is_quasi_iso(*v.witness)) << d;
      EXPECT_TRUE(is_minimal(*v.replacement)) << d;
      EXPECT_EQ(*v.euler_class, euler_characteristic(s.core)) << d;
    }
  }
}

TEST(DecidePerfect, ChoiceOfLiftsDoesNotChangeTheVerdict) {
  std::mt19937_64 rng(42);
  const auto g = build_group("cyclic:9", 3);
  for (int k = 0; k < 6; ++k) {
    const auto s = ts::random_perfect(g, rng);
    DecideOptions o;
    o.reverse_choice = true;
    const auto a = decide_perfect(s.complex), b = decide_perfect(s.complex, o);
    EXPECT_EQ(a.perfect, b.perfect);
    EXPECT_EQ(a.euler_class, b.euler_class);
    EXPECT_EQ(a.replacement->trimmed().ranks(), b.replacement->trimmed().ranks());
  }
}

TEST(WallClass, Examples) {
  const auto g = cyclic_group(2, 2);
  const auto a = wall_class(ChainComplex::single(g, 0, 1));
  EXPECT_EQ(a.k0, 1);
  EXPECT_EQ(a.reduced, 0);
  EXPECT_EQ(wall_class(chains_of_cover(lens_complex(2, 1, 2))).k0, 1);
  EXPECT_EQ(wall_class(cone_of_identity(chains_of_cover(lens_complex(2, 1, 2)))).k0, 0);
}

TEST(MinimalResolution, RanksOverElementaryAbelianGroups) {
  const auto v4 = build_group("product:cyclic:2,cyclic:2", 2);
  const auto r = minimal_resolution(PiModule::trivial(v4, 1), 3);
  EXPECT_EQ(r.complex.ranks(), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_TRUE(is_minimal(r.complex));
  const auto c4 = cyclic_group(4, 2);
  EXPECT_EQ(minimal_resolution(PiModule::trivial(c4, 1), 3).complex.ranks(), (std::vector<std::size_t>{1, 1, 1, 1}));
}
