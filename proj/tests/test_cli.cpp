#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyparr/cli.hpp"

using namespace hyparr;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("hyparr_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string builtin(const std::string& name) {
    auto r = invoke({"builtin", name});
    EXPECT_EQ(r.code, 0);
    return write(name + ".json", r.out);
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, ObstructGeneric4) {
  const auto r = invoke({"obstruct", builtin("generic4")});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["command"], "obstruct");
  EXPECT_EQ(j["payload"]["counts"], Json::parse("[16,16,14]"));
  EXPECT_EQ(j["payload"]["minimal_k"], 2);
  EXPECT_EQ(j["payload"]["kpi1_possible"], false);
  EXPECT_EQ(j["input_digest"].get<std::string>().rfind("fnv1a64:", 0), 0u);
  EXPECT_EQ(j["input_digest"].get<std::string>().size(), 24u);
}

TEST_F(CliTest, SigmaAndLatticeForX2) {
  const auto file = builtin("x2");
  const auto s = Json::parse(invoke({"sigma", file}).out);
  EXPECT_EQ(s["payload"]["counts"], Json::parse("[128,34,34]"));
  const auto k3 = Json::parse(invoke({"sigma", file, "--k", "3", "--full-sets"}).out);
  EXPECT_EQ(k3["payload"]["set"].size(), 34u);
  const auto l = Json::parse(invoke({"lattice", file}).out);
  EXPECT_EQ(l["payload"]["codim_counts"], Json::parse("[1,7,11,1]"));
  EXPECT_EQ(l["payload"]["chamber_count"], 34);
}

TEST_F(CliTest, CertifyAndSink) {
  const auto file = builtin("generic4");
  const auto c = Json::parse(invoke({"certify", file, "--eps", "+++-"}).out);
  EXPECT_EQ(c["payload"]["sink"], "++++");
  EXPECT_EQ(c["payload"]["separating"], Json::parse("[4]"));
  EXPECT_EQ(c["payload"]["rotation"], "1/4");
  const auto w = Json::parse(invoke({"certify", file, "--eps", "+++-", "--weights", "1/2,1/2,1/2,1/2"}).out);
  EXPECT_EQ(w["payload"]["rotation"], "1/2");
  const auto s = Json::parse(invoke({"sink", file, "--eps", "+++-", "--start", "----"}).out);
  EXPECT_EQ(s["payload"]["globally_consistent"], false);
  EXPECT_EQ(s["payload"]["flow"]["path"].back(), "++--");
}

TEST_F(CliTest, SphereReportsAllVerified) {
  const auto r = Json::parse(invoke({"sphere", builtin("generic4"), "--eps", "+++-", "--count", "20", "--seed", "3"}).out);
  EXPECT_EQ(r["payload"]["count"], 20);
  EXPECT_EQ(r["payload"]["verified"], 20);
}

TEST_F(CliTest, ConeOfX2AffineMatchesBuiltin) {
  const auto coned = invoke({"cone", builtin("x2-affine")});
  ASSERT_EQ(coned.code, 0);
  EXPECT_EQ(Json::parse(coned.out), Json::parse(invoke({"builtin", "x2"}).out));
}

TEST_F(CliTest, DomainErrorsExitOneWithJson) {
  const auto flat = write("flat.json", R"({"dim": 3, "forms": [[1,0,0],[0,1,0]]})");
  const auto r = invoke({"validate", flat});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["error"]["kind"], "NotEssential");

  const auto bad = write("bad.json", "{not json");
  EXPECT_EQ(Json::parse(invoke({"validate", bad}).out)["error"]["kind"], "ParseError");
  EXPECT_EQ(Json::parse(invoke({"validate", (dir_ / "missing.json").string()}).out)["error"]["kind"], "IoError");
  const auto g = builtin("generic4");
  EXPECT_EQ(Json::parse(invoke({"certify", g, "--eps", "++++"}).out)["error"]["kind"], "GloballyConsistent");
  EXPECT_EQ(Json::parse(invoke({"sink", g, "--eps", "++"}).out)["error"]["kind"], "DimensionMismatch");
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"sink", "x.json"}).code, 2);
  EXPECT_EQ(invoke({"builtin", "nope"}).code, 2);
}

TEST_F(CliTest, OutputIsReproducible) {
  const auto file = builtin("x2");
  const auto a = invoke({"obstruct", file});
  EXPECT_EQ(a.out, invoke({"obstruct", file}).out);
  EXPECT_EQ(a.out, invoke({"obstruct", file, "--jobs", "4"}).out);
  EXPECT_EQ(invoke({"builtin", "generic", "--n", "6", "--seed", "4"}).out,
            invoke({"builtin", "generic", "--n", "6", "--seed", "4"}).out);
}

TEST_F(CliTest, TooLargeUnlessSampling) {
  const auto r = invoke({"builtin", "generic", "--n", "7", "--l", "3", "--seed", "2"});
  const auto file = write("g7.json", r.out);
  EXPECT_EQ(Json::parse(invoke({"obstruct", file, "--limit", "5"}).out)["error"]["kind"], "TooLarge");
  const auto s = Json::parse(invoke({"obstruct", file, "--limit", "5", "--samples", "3000", "--seed", "1"}).out);
  EXPECT_EQ(s["payload"]["exhaustive"], false);
  EXPECT_EQ(s["payload"]["minimal_k"], 2);
}
