#include "orbicode/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace orbicode;
using orbicode::cli::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = cli::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

Outcome report(const Json& job) { return run({"report", "--job", "-"}, job.dump()); }

}  // namespace

TEST(Report, ZeroCodesP3) {
  Outcome r = report({{"p", 3}, {"d", 1}});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_FALSE(j["group_like"].get<bool>());
  EXPECT_EQ(j["twists"][0]["qdim"]["sqrt_of"], "4/1");
  EXPECT_EQ(j["twists"][0]["dim_T"], "1");
  EXPECT_EQ(j["twists"][0]["rho"], "1/9");
  EXPECT_EQ(j["twists"].size(), 2u);
  EXPECT_TRUE(j["irr_census"].contains("hypothesis_failed"));
}

TEST(Report, RoundTripIsByteIdentical) {
  Outcome r = report({{"p", 5}, {"d", 1}, {"D_generators", Json::array()}, {"twist", 2}});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).dump(2) + "\n", r.out);
}

TEST(Report, SelfDualCodeHasGroupLikeFusion) {
  CodeConstraints cons;
  cons.self_dual = cons.sigma_invariant = cons.even = true;
  auto codes = enumerate_codes_C(5, 2, cons);
  ASSERT_FALSE(codes.empty());
  Outcome r = report({{"p", 5}, {"d", 2}, {"C_generators", cli::c_basis_json(codes.front())}});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["group_like"].get<bool>());
  EXPECT_EQ(j["irr_census"]["order"], "625");
  EXPECT_TRUE(j["irr_census"]["ok"].get<bool>());
  for (const auto& t : j["twists"]) EXPECT_EQ(t["qdim"]["sqrt_of"], "1/1");
}

TEST(Report, HypothesisFailureIsReportedNotFatal) {
  Outcome r = report({{"p", 3}, {"d", 1}, {"C_generators", {"10"}}});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["hypothesis_failed"]["predicate"], "C sigma-invariant");
  EXPECT_FALSE(j.contains("twists"));
}

TEST(Report, BitArraysAndStringsAgree) {
  Json a = Json::parse(report({{"p", 3}, {"d", 1}, {"C_generators", {"11"}}}).out);
  Json b = Json::parse(report({{"p", 3}, {"d", 1}, {"C_generators", {{1, 1}}}}).out);
  EXPECT_EQ(a, b);
}

TEST(Schema, Violations) {
  EXPECT_EQ(report({{"p", 4}, {"d", 1}}).code, 2);
  EXPECT_NE(report({{"p", 4}, {"d", 1}}).err.find("p must be odd"), std::string::npos);
  EXPECT_EQ(report({{"p", 9}, {"d", 1}}).code, 2);
  EXPECT_EQ(report({{"d", 1}}).code, 2);
  EXPECT_EQ(report({{"p", 3}, {"d", 1}, {"C_generators", {"101"}}}).code, 2);
  EXPECT_EQ(report({{"p", 3}, {"d", 1}, {"D_generators", {{1, 2}}}}).code, 2);
  EXPECT_EQ(report({{"p", 3}, {"d", 1}, {"colour", "red"}}).code, 2);
  EXPECT_EQ(report({{"p", 3}, {"d", 1}, {"twist", 3}}).code, 2);
  EXPECT_EQ(run({"report", "--job", "-"}, "{not json").code, 2);
  EXPECT_EQ(run({"report", "--job", "/nonexistent/job.json"}).code, 2);
  EXPECT_EQ(run({"report"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Schema, ErrorIsJson) {
  Outcome r = report({{"p", 4}, {"d", 1}});
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["error"]["kind"], "usage");
}

TEST(Enumerate, SelfDualInvariantP3D1IsEmpty) {
  Outcome r = run({"enumerate", "--job", "-"},
              Json{{"p", 3}, {"d", 1}, {"constraints", {{"self_dual", true}, {"sigma_invariant", true}}}}
                  .dump());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out).empty());
}

TEST(Enumerate, EvenCIncludesZero) {
  Outcome r = run({"enumerate", "--job", "-"},
              Json{{"p", 3}, {"d", 1}, {"constraints", {{"even", true}}}}.dump());
  ASSERT_EQ(r.code, 0) << r.err;
  Json list = Json::parse(r.out);
  ASSERT_FALSE(list.empty());
  EXPECT_TRUE(list[0]["basis"].empty());
  EXPECT_EQ(list[0]["dim"], 0);
  for (const auto& c : list) EXPECT_TRUE(c["even"].get<bool>());
}

TEST(Enumerate, DCodes) {
  Outcome r = run({"enumerate", "--job", "-"}, Json{{"p", 5}, {"d", 2}, {"code", "D"}}.dump());
  ASSERT_EQ(r.code, 0) << r.err;
  // subspaces of F_5^2: zero, 6 lines, whole space
  EXPECT_EQ(Json::parse(r.out).size(), 8u);
}

TEST(Enumerate, ResourceLimits) {
  EXPECT_EQ(run({"enumerate", "--job", "-"}, Json{{"p", 5}, {"d", 7}}.dump()).code, 3);
  Outcome r = run({"enumerate", "--job", "-", "--budget", "10"}, Json{{"p", 5}, {"d", 2}}.dump());
  EXPECT_EQ(r.code, 3);
}

TEST(Theta, Series) {
  Outcome r = run({"theta", "--job", "-", "--order", "2"}, Json{{"p", 3}, {"d", 1}}.dump());
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["terms"][0], Json({"0/1", "1/1"}));
  EXPECT_EQ(j["terms"][1], Json({"2/1", "6/1"}));

  Outcome e = run({"theta", "--job", "-", "--order", "2"},
              Json{{"p", 3}, {"d", 1}, {"series", "eta"}}.dump());
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(Json::parse(e.out)["terms"][0], Json({"1/24", "1/1"}));

  Outcome t = run({"theta", "--job", "-"}, Json{{"p", 3}, {"d", 1}, {"series", "twisted"}}.dump());
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(Json::parse(t.out)["terms"][0], Json({"1/36", "1/1"}));

  EXPECT_EQ(run({"theta", "--job", "-", "--order", "0"}, Json{{"p", 3}, {"d", 1}}.dump()).code, 2);
  EXPECT_EQ(run({"theta", "--job", "-"}, Json{{"p", 3}, {"d", 1}, {"series", "zeta"}}.dump()).code,
            2);
}

TEST(Verify, Suites) {
  Outcome r = run({"verify", "spectral"});
  ASSERT_EQ(r.code, 0) << r.out;
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"][0]["criterion"], 3);
  EXPECT_EQ(run({"verify", "nosuch"}).code, 2);
  EXPECT_EQ(run({"verify", "numeric", "--y-schedule", "1.0,abc"}).code, 2);
  EXPECT_EQ(run({"verify", "numeric", "--y-schedule", "0.5,-1"}).code, 2);
}

TEST(Verify, NumericWithSchedule) {
  Outcome r = run({"verify", "numeric", "--y-schedule", "0.9,0.7,0.5"});
  ASSERT_EQ(r.code, 0) << r.out;
  // too few series terms for the requested accuracy
  EXPECT_EQ(run({"verify", "numeric", "--order", "3"}).code, 3);
}
