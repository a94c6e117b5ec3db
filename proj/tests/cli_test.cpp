#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mzeta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = mzeta::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--output");
  args.push_back("json");
  auto r = run_cli(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(CliStieltjes, Examples) {
  auto j = run_json({"stieltjes", "--point", "0", "--order", "1"});
  EXPECT_EQ(j["value"], "0.918938533205");
  EXPECT_EQ(j["method"], "extrapolation");
  EXPECT_EQ(run_json({"stieltjes", "--point", "1", "--order", "0"})["value"], "0.577215664902");
  EXPECT_EQ(run_json({"stieltjes", "--point", "1,1", "--order", "0,0"})["value"], "-0.655878071520");
}

TEST(CliStieltjes, Errors) {
  EXPECT_EQ(run_cli({"stieltjes", "--point", "1,x", "--order", "0,0"}).code, 2);
  EXPECT_EQ(run_cli({"stieltjes", "--point", "1,1", "--order", "0"}).code, 2);
  EXPECT_EQ(run_cli({"stieltjes", "--point", "1", "--order", "-1"}).code, 2);
  EXPECT_EQ(run_cli({"stieltjes", "--point", "1"}).code, 2);
  EXPECT_EQ(run_cli({"stieltjes", "--point", "1", "--order", "0", "--digits", "60"}).code, 2);
}

TEST(CliZeta, Examples) {
  auto j = run_json({"zeta", "--args", "0"});
  EXPECT_EQ(j["value"].get<std::string>().rfind("-0.500000000000", 0), 0u);
  auto k = run_json({"zeta", "--args", "2,1"});
  EXPECT_EQ(k["value"].get<std::string>().rfind("1.202056903160", 0), 0u);
}

TEST(CliZeta, PolarPoints) {
  auto r = run_cli({"zeta", "--args", "1"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("polar hyperplane s1=1"), std::string::npos);
  EXPECT_EQ(run_cli({"zeta", "--args", "1.05,0.95"}).code, 4);
  EXPECT_EQ(run_cli({"zeta", "--args", "2,2,2,2,2", "--depth-cap", "4"}).code, 2);
}

TEST(CliVerify, SingleIdentities) {
  auto cor = run_json({"verify", "comb-form-cor", "--depth", "1"});
  ASSERT_GT(cor["checks"].size(), 0u);
  for (const auto& c : cor["checks"]) EXPECT_EQ(c["abs_gap"], "0.000e+00");
  auto lim = run_json({"verify", "limits-origin"});
  ASSERT_EQ(lim["checks"].size(), 2u);
  EXPECT_EQ(lim["summary"]["failed"], 0);
  std::set<std::string> expected;
  for (const auto& c : lim["checks"]) expected.insert(c["details"]["expected"].get<std::string>());
  EXPECT_EQ(expected, (std::set<std::string>{"5/12", "1/3"}));
}

TEST(CliVerify, UnknownIdentity) {
  auto r = run_cli({"verify", "no-such-identity"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown identity"), std::string::npos);
}

TEST(CliVerify, ByteIdenticalOutput) {
  std::vector<std::string> args{"verify", "reg-exp", "--seed", "7", "--digits", "10", "--output", "json"};
  auto a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  args[3] = "8";
  EXPECT_NE(run_cli(args).out, a.out);
}

TEST(CliExpand, Examples) {
  auto one = run_json({"expand", "--point", "1", "--degree", "2"});
  ASSERT_EQ(one["coefficients"].size(), 3u);
  EXPECT_EQ(one["coefficients"][0]["value"], "0.577215664902");
  EXPECT_EQ(one["coefficients"][1]["value"], "0.072815845484");
  EXPECT_EQ(one["singular_part"].size(), 1u);
  EXPECT_EQ(one["singular_part"][0]["regularized_at"].size(), 0u);

  auto two = run_json({"expand", "--point", "2", "--degree", "1"});
  EXPECT_EQ(two["singular_part"].size(), 0u);
  EXPECT_EQ(two["coefficients"][0]["value"], "1.644934066848");
  EXPECT_EQ(two["coefficients"][1]["value"], "-0.937548254316");

  auto pair = run_json({"expand", "--point", "1,1", "--degree", "1"});
  EXPECT_EQ(pair["coefficients"].size(), 3u);
  EXPECT_EQ(pair["singular_part"].size(), 2u);

  EXPECT_EQ(run_cli({"expand", "--point", "1", "--degree", "9"}).code, 2);
}

TEST(CliExpand, ExactSingularCoefficients) {
  auto j = run_json({"expand", "--point", "2,0,1", "--degree", "0"});
  ASSERT_EQ(j["singular_part"].size(), 2u);
  auto f = mzeta::RatFunc::from_json(j["singular_part"][1]["coefficient"]);
  EXPECT_EQ(f, mzeta::f_rational({0, 2, 3}, 3, 3));
  EXPECT_EQ(j["singular_part"][1]["sign"], -1);
}
