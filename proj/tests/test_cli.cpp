/*
 * Copyright 2026 The bidgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

struct Run {
    int status;
    std::string out;
};

Run cli(const std::string& args)
{
    std::string cmd = std::string(BIDGAME_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fx(const std::string& name) { return std::string(BIDGAME_FIXTURES) + "/" + name; }

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST(Cli, SolveReachabilityOnChain)
{
    auto r = cli("solve-reachability " + fx("chain.json") + " --target u1 --tol 1e-12");
    ASSERT_EQ(r.status, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["thresholds"]["v1"].get<double>(), (3 - std::sqrt(5.0)) / 2, 1e-8);
    EXPECT_NEAR(j["thresholds"]["v2"].get<double>(), (std::sqrt(5.0) - 1) / 2, 1e-8);
    EXPECT_EQ(j["thresholds"]["u1"].get<double>(), 0.0);
    EXPECT_EQ(j["thresholds"]["u2"].get<double>(), 1.0);
    EXPECT_EQ(cli("solve-reachability " + fx("chain.json")).status, 2);
}

TEST(Cli, ParityAndMeanPayoff)
{
    auto odd = nlohmann::json::parse(cli("solve-parity " + fx("odd-scc.json")).out);
    for (const auto& [id, v] : odd["thresholds"].items()) EXPECT_EQ(v.get<double>(), 0.0) << id;
    auto mp = nlohmann::json::parse(cli("solve-mp " + fx("loops.json")).out);
    EXPECT_EQ(mp["thresholds"]["v1"].get<double>(), 0.5);
    auto two = nlohmann::json::parse(cli("solve-mp " + fx("mp-two-bscc.json") + " --tol 1e-12").out);
    EXPECT_NEAR(two["thresholds"]["root"].get<double>(), 2.0 / 3.0, 1e-8);
    EXPECT_EQ(two["thresholds"]["w"].get<double>(), 1.0);
}

TEST(Cli, ValueIsExact)
{
    auto v = nlohmann::json::parse(cli("value " + fx("loops.json") + " --ratio 1/3").out);
    EXPECT_EQ(v["value"], "-1/3");
    EXPECT_EQ(v["potentials"]["pot"]["v1"], "2");
    EXPECT_EQ(nlohmann::json::parse(cli("value " + fx("selfloop5.json") + " --ratio 0.9").out)["value"], "5");
    auto bad = cli("value " + fx("chain.json") + " --ratio 1/2");
    EXPECT_EQ(bad.status, 1);
    EXPECT_NE(bad.out.find("NotStronglyConnected"), std::string::npos);
    EXPECT_EQ(cli("value " + fx("chain.json") + " --ratio 1/2 --general").status, 0);
}

TEST(Cli, SimulateSummaryAndDeterminism)
{
    const std::string dir = ::testing::TempDir();
    const std::string base = "simulate " + fx("loops.json") + " --rounds 2000 --seeds 3 --seed 7 --max walk --min uniform";
    auto a = cli(base + " --summary " + dir + "/a.json --trace " + dir + "/a.csv");
    auto b = cli(base + " --summary " + dir + "/b.json --trace " + dir + "/b.csv");
    ASSERT_EQ(a.status, 0) << a.out;
    ASSERT_EQ(b.status, 0) << b.out;
    EXPECT_EQ(slurp(dir + "/a.json"), slurp(dir + "/b.json"));
    for (int s = 7; s < 10; ++s) {
        std::string suffix = "-seed" + std::to_string(s) + ".csv";
        std::string ta = slurp(dir + "/a" + suffix);
        EXPECT_FALSE(ta.empty()) << suffix;
        EXPECT_EQ(ta, slurp(dir + "/b" + suffix));
    }
    auto j = nlohmann::json::parse(slurp(dir + "/a.json"));
    EXPECT_EQ(j["runs"].size(), 3u);
    EXPECT_EQ(j["total_violations"], 0);
    EXPECT_EQ(j["runs"][0]["seed"], 7);
    EXPECT_EQ(j["runs"][0]["rounds"], 2000);
}

TEST(Cli, SimulateRejectsBadArguments)
{
    EXPECT_EQ(cli("simulate " + fx("loops.json") + " --max bogus").status, 1);
    EXPECT_EQ(cli("simulate " + fx("loops.json") + " --budgets 1 -1").status, 1);
    EXPECT_EQ(cli("simulate " + fx("loops.json") + " --max walk --min walk").status, 1);
    EXPECT_NE(cli("simulate /nonexistent.json").status, 0);
}

TEST(Cli, ExportEtr)
{
    auto r = cli("export-etr " + fx("chain.json") + " --vertex v1 --ratio 0.38");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("(set-logic QF_NRA)"), std::string::npos);
    EXPECT_NE(r.out.find("(check-sat)"), std::string::npos);
    auto mp = cli("export-etr " + fx("loops.json") + " --vertex v1 --ratio 1/2");
    ASSERT_EQ(mp.status, 0) << mp.out;
    EXPECT_NE(mp.out.find("rho_0"), std::string::npos);
    EXPECT_EQ(cli("export-etr " + fx("loops.json") + " --vertex nope --ratio 1/2").status, 1);
}

TEST(Cli, Auction)
{
    auto k1 = nlohmann::json::parse(cli("auction --slots 1 --rewards " + fx("auction-k1-rewards.json")).out);
    EXPECT_EQ(k1["vertices"].size(), 2u);
    EXPECT_EQ(k1["edges"].size(), 4u);
    auto k2 = nlohmann::json::parse(cli("auction --slots 2 --rewards " + fx("auction-k2-zero.json")).out);
    EXPECT_EQ(k2["vertices"].size(), 8u);
    auto bad = cli("auction --slots 2 --rewards " + fx("auction-k2-missing.json"));
    EXPECT_EQ(bad.status, 1);
    EXPECT_NE(bad.out.find("RewardMissing"), std::string::npos);
}
