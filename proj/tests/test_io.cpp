#include <gtest/gtest.h>

#include "corpus.hpp"
#include "lfin/errors.hpp"
#include "lfin/io.hpp"

using namespace lfin;
namespace ts = testing_support;

namespace {

std::pair<std::size_t, std::size_t> parse_error_at(const std::string& text) {
  try {
    read_complex(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "parsed: " << text;
  return {0, 0};
}

const char* kLens212 =
    "complex v1\n"
    "group cyclic:2\n"
    "prime 2\n"
    "bottom 0\n"
    "ranks 1 1 1\n"
    "boundary 1\n"
    "[1,1]\n"
    "boundary 2\n"
    "[1,1]\n"
    "end\n";

}  // namespace

TEST(ComplexFormat, WritesTheLensComplex) {
  EXPECT_EQ(write_complex(chains_of_cover(lens_complex(2, 1, 2))), kLens212);
}

TEST(ComplexFormat, ReadsCommentsAndReducesCoefficients) {
  const std::string text =
      "# a comment\n\ncomplex v1\ngroup cyclic:3\nprime 3\nbottom 1\nranks 1 1\nboundary 2\n[ -1 , 4, 0 ]\nend\n";
  const auto c = read_complex(text);
  EXPECT_EQ(c.bottom(), 1);
  EXPECT_EQ(c.boundary(2).entry(0, 0), ga_from_coeffs(c.table(), {2, 1, 0}));
}

TEST(ComplexFormat, RoundTripsTheCorpus) {
  for (const auto& e : ts::fixture_corpus()) {
    if (e.tower)
      EXPECT_EQ(write_tower(read_tower(e.text)), e.text) << e.name;
    else
      EXPECT_EQ(write_complex(read_complex(e.text)), e.text) << e.name;
  }
}

TEST(ComplexFormat, ExplicitTablesRoundTrip) {
  const auto q8 = ts::small_l_groups()[7].group;
  const auto c = chains_of_cover(point(q8));
  const auto back = read_complex(write_complex(c));
  EXPECT_TRUE(back.table() == *q8);
}

TEST(ComplexFormat, ParseErrorsCarryPositions) {
  EXPECT_EQ(parse_error_at(""), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(parse_error_at("complex v2\n"), (std::pair<std::size_t, std::size_t>{1, 9}));
  EXPECT_EQ(parse_error_at("complex v1\ngroup cyclic:2\nprime x\n"), (std::pair<std::size_t, std::size_t>{3, 7}));
  EXPECT_EQ(parse_error_at("complex v1\ngroup cyclic:2\nprime 2\nbottom 0\nranks 1 1\nboundary 1\n[1,1,1]\nend\n"),
            (std::pair<std::size_t, std::size_t>{7, 6}));
  EXPECT_EQ(parse_error_at("complex v1\ngroup cyclic:2\nprime 2\nbottom 0\nranks 1 1\nboundary 1\n[1;1]\nend\n"),
            (std::pair<std::size_t, std::size_t>{7, 3}));
  EXPECT_EQ(parse_error_at(std::string(kLens212) + "extra\n"), (std::pair<std::size_t, std::size_t>{11, 1}));
  EXPECT_EQ(parse_error_at("complex v1\ngroup cyclic:2\nprime 2\nbottom 0\nranks 1 1\nboundary 2\n"),
            (std::pair<std::size_t, std::size_t>{6, 10}));
}

TEST(ComplexFormat, SemanticErrorsKeepTheirCodes) {
  const std::string bad = "complex v1\ngroup cyclic:2\nprime 2\nbottom 0\nranks 1 1 1\nboundary 1\n[1,0]\nboundary 2\n[1,0]\nend\n";
  try {
    read_complex(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundarySquareNonzero);
  }
  try {
    read_complex("complex v1\ngroup cyclic:6\nprime 2\nbottom 0\nranks 1\nend\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAnLGroup);
  }
}

TEST(IntMatrixFormat, Parses) {
  const auto m = parse_int_matrix("[[2,4],[6,8]]");
  EXPECT_EQ(m, IntMatrix::from_rows({{2, 4}, {6, 8}}, 2));
  EXPECT_EQ(parse_int_matrix("[[\"123456789012345678901234567890\"]]")(0, 0), mpz_class("123456789012345678901234567890"));
  EXPECT_THROW(parse_int_matrix("[[1,2],[3]]"), ParseError);
  EXPECT_THROW(parse_int_matrix("[[1,"), ParseError);
}

TEST(Digest, IsStable) {
  EXPECT_EQ(digest(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(digest("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(Certificates, PerfectnessVerifiesAndTamperingIsCaught) {
  const auto c = chains_of_cover(lens_complex(3, 1, 3));
  auto cert = perfectness_certificate(c, decide_perfect(c));
  EXPECT_TRUE(verify_certificate(cert).ok);
  auto wrong_euler = cert;
  wrong_euler["verdict"]["euler_class"] = 5;
  EXPECT_FALSE(verify_certificate(wrong_euler).ok);
  auto wrong_input = cert;
  wrong_input["input"] = write_complex(chains_of_cover(lens_complex(3, 1, 2)));
  EXPECT_FALSE(verify_certificate(wrong_input).ok);
  auto wrong_map = cert;
  wrong_map["witness"]["components"][0]["data"][0] = 1 - wrong_map["witness"]["components"][0]["data"][0].get<int>();
  EXPECT_FALSE(verify_certificate(wrong_map).ok);
}

TEST(Certificates, NegativeTowerVerdictVerifies) {
  const auto g = build_group("cyclic:4", 2);
  const auto t = resolution_tower(g, 2, 10, 3);
  const auto lim = limit_complex(t, 4, 1);
  const auto v = decide_perfect(good_truncation(lim.complex, 0));
  ASSERT_FALSE(v.perfect);
  const auto cert = limit_certificate(t, lim, 0, v);
  const auto r = verify_certificate(cert);
  EXPECT_TRUE(r.ok) << r.reason;
  auto flipped = cert;
  flipped["verdict"]["perfect"] = true;
  EXPECT_FALSE(verify_certificate(flipped).ok);
}

TEST(Certificates, QuasiIsoAndCompletion) {
  const auto c = direct_sum(chains_of_cover(lens_complex(2, 1, 3)), cone_of_identity(ChainComplex::single(cyclic_group(2, 2), 1, 2)));
  EXPECT_TRUE(verify_certificate(quasi_iso_certificate(c, minimalize(c))).ok);
  const auto k = completion_certificate(parse_abelian("Z^2+Z/12"), 2);
  EXPECT_TRUE(verify_certificate(k).ok);
  auto bad = k;
  bad["verdict"]["completion"] = "Z_2^2 + Z/3";
  EXPECT_FALSE(verify_certificate(bad).ok);
  EXPECT_TRUE(verify_certificate(snf_certificate(IntMatrix::from_rows({{2, 4}, {6, 8}}, 2))).ok);
}

TEST(Certificates, MalformedInputIsRejectedNotThrown) {
  EXPECT_FALSE(verify_certificate(nlohmann::json::object()).ok);
  EXPECT_FALSE(verify_certificate(nlohmann::json{{"kind", "other"}, {"input", ""}, {"digest", digest("")}}).ok);
}
