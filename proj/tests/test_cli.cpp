#include "dasep/cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = dasep::cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, SolveAsepText) {
    const auto r = run({"--no-banner", "solve", "--model", "asep", "--lambda", "2,1,0", "--t", "1/2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0,1,2 4/27\n0,2,1 5/27\n1,0,2 5/27\n1,2,0 4/27\n2,0,1 4/27\n2,1,0 5/27\n");
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, SolveJsonSchema) {
    const auto r = run({"--no-banner", "--format", "json", "solve", "--n", "3", "--p", "2", "--q", "2", "--t", "0", "--u", "1"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["model"], "dasep");
    EXPECT_EQ(j["params"]["t"], "0/1");
    EXPECT_EQ(j["params"]["u"], "1/1");
    ASSERT_EQ(j["states"].size(), 12u);
    EXPECT_EQ(j["states"][0]["word"], "0,1,1");
    EXPECT_EQ(j["states"][0]["prob"], "1/12");
}

TEST(Cli, SolveCsv) {
    const auto r = run({"--no-banner", "solve", "--lambda", "1,1,0", "--t", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "word,prob\n\"0,1,1\",1/3\n\"1,0,1\",1/3\n\"1,1,0\",1/3\n");
}

TEST(Cli, StatesCount) {
    const auto r = run({"--no-banner", "states", "--n", "3", "--p", "2", "--q", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(line_count(r.out), 12u);
}

TEST(Cli, BannerGoesToErrorStream) {
    const auto r = run({"states", "--lambda", "1,0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0,1\n1,0\n");
    EXPECT_NE(r.err.find("dasep"), std::string::npos);
}

TEST(Cli, ByteStableOutput) {
    const std::vector<std::string> args{"--no-banner", "--format", "json", "simulate", "--n", "3", "--p", "2", "--q", "2",
                                        "--t", "1/2", "--u", "1/2", "--steps", "20000", "--seed", "3", "--compare"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, KernelDot) {
    const auto r = run({"--no-banner", "kernel", "--lambda", "2,1,0", "--t", "1/2", "--dot"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("digraph asep {", 0), 0u);
}

TEST(Cli, SymbolicAndMlq) {
    auto r = run({"--no-banner", "symbolic", "--lambda", "2,1,0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0,1,2 "), std::string::npos);
    r = run({"--no-banner", "mlq", "--lambda", "2,1,0", "--t", "1/3", "--sum"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "9/1\n");
}

TEST(Cli, VerifyChecks) {
    auto r = run({"--no-banner", "verify", "--check", "dasep322", "--t", "1/3", "--u", "2"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    r = run({"--no-banner", "verify", "--all", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, SweepCsv) {
    const auto r = run({"--no-banner", "--format", "csv", "sweep", "--n", "3", "--p", "2", "--q", "2", "--t-grid", "1,1/2",
                        "--u-grid", "1", "--workers", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "t,u,ratios_equal,expected_equal,status\n1/1,1/1,true,true,pass\n1/2,1/1,false,false,pass\n");
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"--no-banner"}).code, 2);
    EXPECT_EQ(run({"--no-banner", "frobnicate"}).code, 2);
    EXPECT_EQ(run({"--no-banner", "solve", "--bogus"}).code, 2);
    EXPECT_EQ(run({"--no-banner", "verify"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsExitOne) {
    auto r = run({"--no-banner", "solve", "--lambda", "2,1,0", "--t", "0.5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("0.5"), std::string::npos);
    r = run({"--no-banner", "states", "--n", "3", "--p", "2", "--q", "3"});
    EXPECT_EQ(r.code, 1);
    r = run({"--no-banner", "solve", "--lambda", "1,2,0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("index"), std::string::npos);
    r = run({"--no-banner", "symbolic", "--n", "5", "--p", "3", "--q", "2"});
    EXPECT_EQ(r.code, 1);
}
