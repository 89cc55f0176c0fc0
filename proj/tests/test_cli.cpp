#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "nilaut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = nilaut::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, NormalForm) {
  const Result r = run({"nf", "-n", "2", "-d", "2", "x2*x1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("malcev (1, 1, 1)"), std::string::npos);
  EXPECT_NE(r.out.find("word x1*x2*c(x2,x1)"), std::string::npos);
}

TEST(Cli, JsonOutputParses) {
  const Result r = run({"mul", "--json", "-d", "3", "x2", "x1"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["malcev"], (std::vector<long>{1, 1, 1, 0, 0}));
  EXPECT_EQ(j["basis"][2], "[x2,x1]");
  EXPECT_EQ(j["word"], "x1*x2*c(x2,x1)");
}

TEST(Cli, CommutatorLogExpBch) {
  EXPECT_NE(run({"comm", "x1", "x1"}).out.find("word 1"), std::string::npos);
  EXPECT_NE(run({"bch", "x1", "x2"}).out.find("lie 1*x1 + 1*x2 + -1/2*[x2,x1]"), std::string::npos);
  EXPECT_NE(run({"log", "c(x2,x1)"}).out.find("lie 1*[x2,x1]"), std::string::npos);
  const Result half = run({"exp", "x1+x2"});
  EXPECT_EQ(half.code, 2);
  const Result e = run({"exp", "x1*x2"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("not in the group"), std::string::npos);
  EXPECT_NE(run({"exp", "x1^2"}).out.find("malcev (2, 0, 0)"), std::string::npos);
}

TEST(Cli, CheckWordExitCodes) {
  const Result good = run({"check-word", "-d", "2", "x1*x2*c(x2,x1)"});
  EXPECT_EQ(good.code, 0);
  const Result bad = run({"check-word", "--json", "-d", "2", "x1*x2*c(x2,x1)^2"});
  EXPECT_EQ(bad.code, 1);
  const auto j = nlohmann::json::parse(bad.out);
  EXPECT_EQ(j["layer_dets"], (std::vector<long>{1, -3}));
  EXPECT_EQ(j["op_d_pass"], false);
}

TEST(Cli, ErrorsExitTwo) {
  const Result parse = run({"nf", "x1*"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_EQ(parse.err.rfind("parse error: ", 0), 0u);
  EXPECT_EQ(run({"nf", "-n", "2", "x3"}).code, 2);
  EXPECT_EQ(run({"check-word", "x3"}).code, 2);
  EXPECT_EQ(run({"search", "-d", "1"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check-system", "other"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SearchAndCertify) {
  const Result s = run({"search", "--json", "-d", "2", "-M", "10"});
  ASSERT_EQ(s.code, 0);
  const auto js = nlohmann::json::parse(s.out);
  EXPECT_EQ(js["survivors"].size(), 2u);
  const Result c = run({"certify", "--json", "--max-class", "3", "--lambdas", "1,2"});
  ASSERT_EQ(c.code, 0);
  const auto jc = nlohmann::json::parse(c.out);
  EXPECT_EQ(jc["passed"], true);
  EXPECT_EQ(jc["sections"][1]["certificate"]["nullity"], 0);
  EXPECT_EQ(jc["sections"][1]["base_or_step"], "step");
}

TEST(Cli, CheckSystemIsDeterministic) {
  const Result a = run({"check-system", "reverse", "-d", "3", "--samples", "10", "--seed", "4"});
  const Result b = run({"check-system", "reverse", "-d", "3", "--samples", "10", "--seed", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(run({"check-system", "identity", "--json", "-d", "2", "--samples", "5"}).out);
  EXPECT_EQ(j["witness"]["passed"], true);
}
