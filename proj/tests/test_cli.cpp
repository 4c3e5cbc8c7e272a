#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "lfin/cli.hpp"

namespace fs = std::filesystem;
namespace ts = testing_support;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = lfin::run(args, out, err);
  return {status, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("lfin_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                                ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST(Cli, PerfectOnLens) {
  Scratch s;
  const auto lens = cli({"lens", "2", "1", "2"});
  ASSERT_EQ(lens.status, 0);
  const auto path = s.write("lens(2,1,2).cplx", lens.out);
  const auto r = cli({"perfect", path});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "perfect; euler_class=1; replacement ranks [1,1,1]\n");
}

TEST(Cli, Snf) {
  EXPECT_EQ(cli({"snf", "[[2,4],[6,8]]"}).out, "invariant factors: 2 4\n");
  EXPECT_EQ(cli({"snf", "[[0,0],[0,0]]"}).out, "invariant factors: none\n");
  EXPECT_EQ(cli({"snf", "[[1,2]"}).status, 2);
}

TEST(Cli, Complete) {
  EXPECT_EQ(cli({"complete", "--group", "Z/6", "--l", "3"}).out, "Z/3\n");
  EXPECT_EQ(cli({"complete", "--group", "Z/6", "--l", "4"}).status, 2);
}

TEST(Cli, HomologyAndWall) {
  Scratch s;
  const auto path = s.write("l.cplx", cli({"lens", "3", "1", "2"}).out);
  const auto h = cli({"homology", path});
  EXPECT_EQ(h.out,
            "H_0: dim 1, minimal generators 1, not free\n"
            "H_1: dim 0, minimal generators 0, free\n"
            "H_2: dim 2, minimal generators 1, not free\n");
  EXPECT_EQ(cli({"wall", path}).out, "K0 class 1; reduced class 0\n");
}

TEST(Cli, NegativeVerdictExitsOne) {
  Scratch s;
  const auto g = lfin::build_group("cyclic:2", 2);
  const auto path = s.write("r.tower", lfin::write_tower(lfin::resolution_tower(g, 2, 10, 1)));
  const auto r = cli({"tower-perfect", path, "--horizon", "4", "--bound", "0"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.rfind("not perfect;", 0), 0u);
  const auto j = cli({"tower-perfect", path, "--horizon", "4", "--bound", "0", "--json"});
  EXPECT_EQ(j.status, 1);
  const auto cert = s.write("r.json", j.out);
  EXPECT_EQ(cli({"verify", cert}).out, "certificate ok\n");
}

TEST(Cli, InputErrorsExitTwo) {
  Scratch s;
  const auto bad = s.write("bad.cplx", "complex v1\ngroup cyclic:2\nprime 2\nbottom x\n");
  const auto r = cli({"perfect", bad});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
  EXPECT_NE(r.err.find(":4:8:"), std::string::npos);
  EXPECT_EQ(cli({"perfect", (fs::temp_directory_path() / "does-not-exist.cplx").string()}).status, 2);
  EXPECT_EQ(cli({"no-such-command"}).status, 2);
  EXPECT_EQ(cli({}).status, 2);
  EXPECT_EQ(cli({"verify", s.write("junk.json", "{not json")}).status, 2);
}

TEST(Cli, TamperedCertificateIsRejected) {
  Scratch s;
  const auto path = s.write("l.cplx", cli({"lens", "2", "2", "3"}).out);
  auto cert = nlohmann::json::parse(cli({"perfect", "--json", path}).out);
  cert["verdict"]["euler_class"] = 1;
  const auto r = cli({"verify", s.write("c.json", cert.dump())});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.rfind("certificate rejected:", 0), 0u);
}

TEST(Cli, BatchOutputIsInInputOrderAndDeterministic) {
  Scratch s;
  std::vector<std::string> paths;
  for (unsigned n = 0; n <= 6; ++n)
    paths.push_back(s.write("l" + std::to_string(n) + ".cplx", cli({"lens", "3", "2", std::to_string(n)}).out));
  std::vector<std::string> serial_args{"perfect"}, parallel_args{"perfect", "--jobs", "4"};
  serial_args.insert(serial_args.end(), paths.begin(), paths.end());
  parallel_args.insert(parallel_args.end(), paths.begin(), paths.end());
  const auto a = cli(serial_args), b = cli(parallel_args), c = cli(parallel_args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(b.out, c.out);
  EXPECT_EQ(a.status, 0);
  std::size_t pos = 0;
  for (const auto& p : paths) {
    const auto at = a.out.find("==> " + p + " <==", pos);
    ASSERT_NE(at, std::string::npos);
    pos = at + 1;
  }
}

TEST(Cli, EveryCorpusCertificateVerifies) {
  Scratch s;
  int i = 0;
  for (const auto& e : ts::fixture_corpus()) {
    const auto path = s.write("in" + std::to_string(i++), e.text);
    std::vector<std::vector<std::string>> runs;
    if (e.tower) {
      std::vector<std::string> args{"tower-perfect", "--json", path, "--horizon", std::to_string(e.horizon)};
      if (e.bound) args.insert(args.end(), {"--bound", std::to_string(*e.bound)});
      runs.push_back(args);
      runs.push_back({"tower-limit", "--json", path, "--horizon", std::to_string(e.horizon)});
    } else {
      runs.push_back({"perfect", "--json", path});
      runs.push_back({"minimalize", "--json", path});
    }
    for (const auto& args : runs) {
      const auto r = cli(args);
      ASSERT_LE(r.status, 1) << e.name << " " << r.err;
      const auto v = cli({"verify", s.write("cert" + std::to_string(i++), r.out)});
      EXPECT_EQ(v.out, "certificate ok\n") << e.name << " " << args[0];
    }
  }
}
