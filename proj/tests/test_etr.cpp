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

#include <algorithm>

#include "bidgame/etr.hpp"
#include "bidgame/io.hpp"
#include "bidgame/threshold.hpp"
#include "oracles.hpp"

using namespace bidgame;

namespace {

GameGraph fixture(const std::string& name) { return load_game(std::string(BIDGAME_FIXTURES) + "/" + name); }

bool declares(const SmtScript& s, const std::string& v)
{
    return std::find(s.variables.begin(), s.variables.end(), v) != s.variables.end();
}

/// x_u from `th` plus the successor max/min auxiliaries of every interior vertex.
std::map<std::string, double> threshold_assignment(const GameGraph& g, const std::vector<double>& th)
{
    std::map<std::string, double> a;
    for (Vertex u = 0; u < g.size(); ++u) {
        a[etr::x(u)] = th[u];
        double hi = 0, lo = 1;
        for (Vertex w : g.successors(u)) {
            hi = std::max(hi, th[w]);
            lo = std::min(lo, th[w]);
        }
        a["p_" + std::to_string(u)] = hi;
        a["m_" + std::to_string(u)] = lo;
    }
    return a;
}

} // namespace

TEST(Etr, EveryEmissionReparses)
{
    for (const char* name : {"chain.json", "odd-scc.json"}) {
        GameGraph g = fixture(name);
        for (Vertex v = 0; v < g.size(); ++v) {
            auto s = read_smtlib(emit_parity_threshbud(g, v, Rational(1, 3)).to_smtlib());
            EXPECT_EQ(s.logic, "QF_NRA");
            EXPECT_TRUE(s.check_sat);
        }
    }
    for (const char* name : {"loops.json", "mp-two-bscc.json", "selfloop5.json", "chain.json"}) {
        GameGraph g = fixture(name);
        for (Vertex v = 0; v < g.size(); ++v) EXPECT_NO_THROW(read_smtlib(emit_mp_threshbud(g, v, Rational(0)).to_smtlib())) << name;
    }
}

TEST(Etr, Structure)
{
    GameGraph odd = fixture("odd-scc.json");
    auto s = emit_parity_threshbud(odd, 0, Rational(1, 2)).to_smtlib();
    for (Vertex u = 0; u < odd.size(); ++u) EXPECT_NE(s.find("(assert (= " + etr::x(u) + " 0))"), std::string::npos);

    auto mp = read_smtlib(emit_mp_threshbud(fixture("mp-two-bscc.json"), 0, Rational(1, 2)).to_smtlib());
    for (const char* v : {"rho_0", "rho_1", "c0_0", "c1_0", "c_0", "c0_1", "c1_1", "c_1"}) EXPECT_TRUE(declares(mp, v)) << v;

    EXPECT_EQ(etr::literal(Rational(-3, 4)), "(- (/ 3 4))");
    EXPECT_EQ(etr::literal(Rational(5)), "5");
    EXPECT_THROW(emit_parity_threshbud(fixture("loops.json"), 0, Rational(1, 2)), Error);
    EXPECT_THROW(emit_mp_threshbud(odd, 7, Rational(1, 2)), Error);
    EXPECT_THROW(emit_mp_threshbud(odd, 0, Rational(3, 2)), Error);
}

TEST(Etr, ParityThresholdsSatisfyTheProgram)
{
    GameGraph g = fixture("chain.json");
    FixedPointOptions opt;
    opt.tol = 1e-13;
    auto th = solve_parity(g, opt);
    auto a = threshold_assignment(g, th.th);
    for (Vertex v = 0; v < g.size(); ++v) {
        Rational below(static_cast<long>(std::floor(th.th[v] * 1000)) - 1, 1000);
        Rational above(static_cast<long>(std::ceil(th.th[v] * 1000)) + 1, 1000);
        below.canonicalize();
        above.canonicalize();
        if (below >= 0) {
            EXPECT_TRUE(satisfies(read_smtlib(emit_parity_threshbud(g, v, below).to_smtlib()), a, 1e-9)) << g.id(v);
        }
        if (above <= 1) {
            EXPECT_FALSE(satisfies(read_smtlib(emit_parity_threshbud(g, v, above).to_smtlib()), a, 1e-9)) << g.id(v);
        }
    }
}

TEST(Etr, LoopsMeanPayoffWitness)
{
    // hand-solved optimality equations on LOOPS (v1 = 0, v2 = 1, h(v1) = 0):
    // RT^0 gain -1, RT^1 gain 1, RT^{1/2} gain 0, bias h(v2) = -2 in all three
    GameGraph g = fixture("loops.json");
    std::map<std::string, double> a{{"x_0", 0.5}, {"x_1", 0.5}, {"rho_0", 0.5}, {"c0_0", -1}, {"c1_0", 1}, {"c_0", 0}};
    for (const char* t : {"0", "1", ""}) {
        a["h" + std::string(t) + "_0_0"] = 0;
        a["h" + std::string(t) + "_0_1"] = -2;
    }
    for (Vertex u = 0; u < 2; ++u) {
        a["hm0_0_" + std::to_string(u)] = -2;
        a["hp1_0_" + std::to_string(u)] = 0;
        a["hp_0_" + std::to_string(u)] = 0;
        a["hm_0_" + std::to_string(u)] = -2;
    }
    EXPECT_TRUE(satisfies(read_smtlib(emit_mp_threshbud(g, 0, Rational(1, 2)).to_smtlib()), a));
    EXPECT_FALSE(satisfies(read_smtlib(emit_mp_threshbud(g, 0, Rational(51, 100)).to_smtlib()), a));
    a["rho_0"] = 0.4;
    EXPECT_FALSE(satisfies(read_smtlib(emit_mp_threshbud(g, 0, Rational(1, 3)).to_smtlib()), a));
}

TEST(Etr, ReaderRejectsBadInput)
{
    const std::string head = "(set-logic QF_NRA)(declare-fun x () Real)";
    EXPECT_THROW(read_smtlib(head + "(assert (<= x 1)"), Error);
    EXPECT_THROW(read_smtlib(head + "(assert (<= x 1)))"), Error);
    EXPECT_THROW(read_smtlib(head + "(assert (<= y 1))"), Error);
    EXPECT_THROW(read_smtlib(head + "(assert (+ x 1))"), Error);
    EXPECT_THROW(read_smtlib(head + "(assert (and (<= x 1) x))"), Error);
    EXPECT_THROW(read_smtlib(head + "(assert (exp x))"), Error);
    EXPECT_THROW(read_smtlib(head + "(declare-fun x () Real)"), Error);
    EXPECT_THROW(read_smtlib("(set-logic QF_LRA)(declare-fun x () Real)"), Error);
    EXPECT_THROW(read_smtlib("(set-logic QF_NRA)(declare-fun f (Real) Real)"), Error);
    auto s = read_smtlib(head + "; note\n(assert (= (* 2 x) 1))(check-sat)(exit)");
    EXPECT_TRUE(satisfies(s, {{"x", 0.5}}));
    EXPECT_FALSE(satisfies(s, {{"x", 0.6}}));
    EXPECT_THROW(satisfies(s, {}), Error);
}
