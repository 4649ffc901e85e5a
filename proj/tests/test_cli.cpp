#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = nilgrp::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST(Cli, HallListsBasis) {
  const Result r = invoke({"hall", "--gens", "2", "--step", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["basis"].size(), 3u);
  EXPECT_EQ(j["basis"][2]["word"], "[x1,x2]");
}

TEST(Cli, SynthSumStepOne) {
  const Result r = invoke({"synth-sum", "--step", "1"});
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r.out);
  EXPECT_EQ(j["m"], 1);
  EXPECT_EQ(j["word"], "a b");
  EXPECT_EQ(j["length"], 2);
  EXPECT_EQ(j["certificate"], "exact");
}

TEST(Cli, BchDegreeTable) {
  const Result r = invoke({"bch", "--step", "2", "--degree-table"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r.out).dump(), R"([{"coefficient":"-1/2","pattern":[1,2]}])");
}

TEST(Cli, SynthPowerReportsDivisibility) {
  Result ok = invoke({"synth-power", "--step", "3", "--gens", "2", "--level", "3", "--T", "6"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(parse(ok.out)["divisors"], nlohmann::json({1, 2, 6}));
  Result bad = invoke({"synth-power", "--step", "3", "--gens", "2", "--level", "3", "--T", "4"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("divisibility violation"), std::string::npos);
  EXPECT_EQ(parse(bad.err)["error"]["kind"], "usage");
}

TEST(Cli, ExtractBracketFromStdin) {
  const Result r = invoke({"extract-bracket", "--step", "3"}, R"({"a": {"x1": "1/1"}, "b": {"x2": "2/1", "[x1,x2]": "1/3"}})");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r.out)["bracket"].dump(), R"({"[x1,[x1,x2]]":"1/3","[x1,x2]":"2/1"})");
  EXPECT_EQ(invoke({"extract-bracket", "--step", "3"}, "not json").code, 2);
}

TEST(Cli, VerifyIdentities) {
  const Result r = invoke({"verify-identities", "--step", "3", "--trials", "100", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(parse(r.out)["passed"].get<bool>());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"hall", "--gens", "2", "--step", "2", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({"hall", "--gens", "2"}).code, 2);
  EXPECT_EQ(invoke({"hall", "--gens", "2", "--step", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"hall", "--gens", "0", "--step", "2"}).code, 2);
  const Result help = invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("growth"), std::string::npos);
}

TEST(Cli, SizeCapExitCode) {
  const Result r = invoke({"growth", "--dim", "3", "--radius", "3", "--powers", "1", "--cap", "10"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(parse(r.err)["error"]["kind"], "size_cap");
}

TEST(Cli, GrowthReport) {
  const Result r = invoke({"growth", "--group", "ut", "--dim", "3", "--radius", "1", "--powers", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["ball"]["size"], 5);
  EXPECT_EQ(j["commutator_chain"]["sizes"], nlohmann::json({5, 3, 1}));
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_FALSE(j.contains("timing_ms"));
}

TEST(Cli, DeterministicAcrossRunsAndThreads) {
  const std::vector<std::vector<std::string>> commands{
      {"hall", "--gens", "3", "--step", "4"},
      {"bch", "--step", "4"},
      {"bch", "--step", "5", "--degree-table"},
      {"synth-sum", "--step", "3"},
      {"synth-power", "--step", "4", "--gens", "2", "--level", "4", "--T", "12"},
      {"verify-identities", "--step", "3", "--trials", "20", "--seed", "5"},
      {"growth", "--dim", "3", "--radius", "1", "--powers", "1", "--mode", "sampled", "--samples", "2"},
      {"growth", "--dim", "4", "--radius", "1", "--powers", "1"},
  };
  for (auto cmd : commands) {
    const Result first = invoke(cmd);
    ASSERT_EQ(first.code, 0) << cmd[0] << ": " << first.err;
    EXPECT_EQ(invoke(cmd).out, first.out) << cmd[0];
    for (const char* format : {"json", "text"}) {
      auto one = cmd;
      one.insert(one.end(), {"--threads", "1", "--format", format});
      auto four = cmd;
      four.insert(four.end(), {"--threads", "4", "--format", format});
      EXPECT_EQ(invoke(one).out, invoke(four).out) << cmd[0] << " " << format;
    }
  }
}
