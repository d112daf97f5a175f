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

#include "bidgame/io.hpp"
#include "bidgame/simulator.hpp"
#include "bidgame/strategy/factory.hpp"
#include "oracles.hpp"

using namespace bidgame;

namespace {

GameGraph loops()
{
    return parse_game(R"({"vertices":[{"id":"v1","weight":"1"},{"id":"v2","weight":"-1"}],
      "edges":[["v1","v1"],["v1","v2"],["v2","v1"],["v2","v2"]]})");
}

/// Bids a fixed script of amounts; used to pin bookkeeping by hand.
class Scripted : public Bidder {
public:
    Scripted(std::vector<Rational> bids, Vertex move) : bids_(std::move(bids)), move_(move) {}
    std::string name() const override { return "scripted"; }
    BidAction act(const BidContext& c) override { return {bids_.at((c.round - 1) % bids_.size()), move_}; }

private:
    std::vector<Rational> bids_;
    Vertex move_;
};

MatchConfig config(const GameGraph& g, Rational b1, Rational b2, std::size_t rounds)
{
    MatchConfig c;
    c.game = &g;
    c.budget1 = std::move(b1);
    c.budget2 = std::move(b2);
    c.rounds = rounds;
    return c;
}

} // namespace

TEST(Simulator, PoormanLedger)
{
    GameGraph g = loops();
    Scripted max({Rational(1, 2), Rational(1, 8)}, 0), min({Rational(1, 4), Rational(1, 4)}, 1);
    auto t = run_match(config(g, 1, 1, 2), max, min);
    // round 1: Max wins paying 1/2; round 2: Min wins paying 1/4
    EXPECT_EQ(t.budget1, Rational(1, 2));
    EXPECT_EQ(t.budget2, Rational(3, 4));
    EXPECT_EQ(t.records[0].winner, 1);
    EXPECT_EQ(t.records[1].winner, 2);
    EXPECT_EQ(t.path, (std::vector<Vertex>{0, 0, 1}));
    EXPECT_EQ(t.energy, Rational(2));
    EXPECT_EQ(t.violation_count, 0u);
}

TEST(Simulator, RichmanAndSecondPriceLedgers)
{
    GameGraph g = loops();
    {
        Scripted max({Rational(1, 2)}, 0), min({Rational(1, 4)}, 1);
        auto c = config(g, 1, 1, 1);
        c.rule = PaymentRule::Richman;
        auto t = run_match(c, max, min);
        EXPECT_EQ(t.budget1, Rational(1, 2));
        EXPECT_EQ(t.budget2, Rational(3, 2));
    }
    {
        Scripted max({Rational(1, 2)}, 0), min({Rational(1, 4)}, 1);
        auto c = config(g, 1, 1, 1);
        c.rule = PaymentRule::SecondPricePoorman;
        auto t = run_match(c, max, min);
        EXPECT_EQ(t.budget1, Rational(3, 4));
        EXPECT_EQ(t.budget2, Rational(1));
    }
}

TEST(Simulator, TieBreaking)
{
    GameGraph g = loops();
    auto moves1 = default_moves(g, 1), moves2 = default_moves(g, 2);
    {
        AlwaysZero a(moves1), b(moves2);
        auto t = run_match(config(g, 1, 1, 50), a, b);
        EXPECT_EQ(t.wins2, 50u);
        EXPECT_EQ(t.wins1, 0u);
    }
    {
        AlwaysZero a(moves1), b(moves2);
        auto c = config(g, 1, 1, 50);
        c.tie = TieBreak::MaxWins;
        EXPECT_EQ(run_match(c, a, b).wins1, 50u);
    }
    {
        AlwaysZero a(moves1), b(moves2);
        auto c = config(g, 1, 1, 4);
        c.tie = TieBreak::Alternate;
        auto t = run_match(c, a, b);
        EXPECT_EQ(t.records[0].winner, 2);
        EXPECT_EQ(t.records[1].winner, 1);
        EXPECT_EQ(t.records[2].winner, 2);
    }
}

TEST(Simulator, IllegalBidCarriesPartialTrace)
{
    GameGraph g = loops();
    Scripted max({Rational(1, 2), Rational(3, 4)}, 0), min({0}, 1);
    try {
        run_match(config(g, 1, 1, 5), max, min);
        FAIL();
    } catch (const IllegalBidError& e) {
        EXPECT_EQ(e.player(), 1);
        EXPECT_EQ(e.round(), 2u);
        EXPECT_EQ(e.partial().rounds_played, 1u);
        EXPECT_EQ(e.kind(), ErrorKind::IllegalBid);
    }
    Scripted neg({Rational(-1)}, 0);
    EXPECT_THROW(run_match(config(g, 1, 1, 5), neg, min), IllegalBidError);
}

TEST(Simulator, RejectsBadConfigs)
{
    GameGraph g = loops();
    AlwaysZero a(default_moves(g, 1)), b(default_moves(g, 2));
    EXPECT_THROW(run_match(config(g, 0, 0, 1), a, b), Error);
    EXPECT_THROW(run_match(config(g, -1, 2, 1), a, b), Error);
    auto c = config(g, Rational(1, 3), 1, 1);
    c.quantum = Rational(1, 4);
    EXPECT_THROW(run_match(c, a, b), Error);
    EXPECT_EQ(default_quantum(Rational(1, 3), Rational(1, 5)), Rational(1, 15) * pow2(-50));
}

TEST(Simulator, WalkAgainstQueueOnLoops)
{
    GameGraph g = loops();
    auto walk = make_bidder(parse_strategy_spec("walk"), {&g, 1, 0});
    auto queue = make_bidder(parse_strategy_spec("queue"), {&g, 2, 0});
    auto c = config(g, Rational(11, 20), Rational(9, 20), 10000);
    c.quantum = default_quantum(c.budget1, c.budget2);
    Rational kappa = choose_kappa(walk.table->nu, Rational(11, 9));
    c.energy_floor = walk_energy_bound(*walk.table, kappa);
    c.keep_records = false;
    auto t = run_match(c, *walk.bidder, *queue.bidder);
    EXPECT_EQ(t.violation_count, 0u);
    ASSERT_TRUE(t.min_tail_average);
    EXPECT_GE(*t.min_tail_average, Rational(-2, 100));
    EXPECT_GE(t.min_energy, *c.energy_floor);
}

TEST(Simulator, MinMirrorReachesMinusThird)
{
    GameGraph g = loops();
    for (int p = 1; p <= 9; p += 4) {
        auto max = make_bidder(parse_strategy_spec("const:p=" + std::to_string(p) + "/10"), {&g, 1, 0});
        auto min = make_bidder(parse_strategy_spec("walk:r=2/3"), {&g, 2, 0});
        // Min holds 2/3 + 0.05 of the total
        auto c = config(g, Rational(17, 60), Rational(43, 60), 20000);
        c.quantum = default_quantum(c.budget1, c.budget2);
        c.keep_records = false;
        auto t = run_match(c, *max.bidder, *min.bidder);
        EXPECT_EQ(t.violation_count, 0u);
        ASSERT_TRUE(t.max_tail_average);
        EXPECT_LE(*t.max_tail_average, Rational(-1, 3) + Rational(2, 100));
    }
}

TEST(Simulator, DeterministicTraces)
{
    GameGraph g = loops();
    auto once = [&] {
        auto max = make_bidder(parse_strategy_spec("uniform"), {&g, 1, 42});
        auto min = make_bidder(parse_strategy_spec("uniform"), {&g, 2, 42});
        auto c = config(g, 1, 1, 300);
        c.seed = 42;
        c.quantum = default_quantum(c.budget1, c.budget2);
        return trace_csv(g, run_match(c, *max.bidder, *min.bidder));
    };
    EXPECT_EQ(once(), once());
}

TEST(Simulator, EnergyCountsDepartedVertices)
{
    GameGraph g = loops();
    Scripted max({1}, 0), min({0}, 1);
    auto c = config(g, 10, 1, 3);
    c.initial_energy = 5;
    c.tie = TieBreak::MaxWins;
    auto t = run_match(c, max, min);
    EXPECT_EQ(t.energy, Rational(8));
    EXPECT_EQ(t.min_energy, Rational(5));
    // tail window n >= 2 over path energy 2, 3 -> min average 1
    EXPECT_EQ(*t.min_tail_average, Rational(1));
}

TEST(PathInequality, Examples)
{
    GameGraph g = loops();
    auto t = potentials(g, Rational(1, 2));
    auto one = check_path_inequality(g, {0}, t);
    EXPECT_TRUE(one.holds);
    EXPECT_EQ(one.slack, Rational(0));
    // v1 -> v1 (to v+, a Max win) -> v2 (to v-, a Min win):
    // E = 2, G = St(v1) = 1, I = St(v1) = 1, Pot(v1) - Pot(v2) = 2
    auto p = check_path_inequality(g, {0, 0, 1}, t);
    EXPECT_TRUE(p.holds);
    EXPECT_EQ(p.slack, Rational(2 + 1 - 1 - 2));
}

TEST(PathInequality, RandomPlaysOnRandomGames)
{
    oracle::Rng rng(31);
    for (int game = 0; game < 6; ++game) {
        GameGraph g = oracle::random_scc(rng, static_cast<std::size_t>(rng.uniform(2, 6)), false);
        Rational r = rng.ratio(5, true);
        auto t = potentials(g, r);
        for (int play = 0; play < 30; ++play) {
            std::vector<Vertex> path{static_cast<Vertex>(rng.uniform(0, static_cast<long>(g.size()) - 1))};
            for (int step = 0; step < 60; ++step) {
                Vertex v = path.back();
                const auto& succ = g.successors(v);
                path.push_back(rng.coin() ? t.plus[v] : succ[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(succ.size()) - 1))]);
            }
            EXPECT_TRUE(check_path_inequality(g, path, t).holds);
        }
    }
}

TEST(MeanPayoffEstimate, ZeroGameAndAggregation)
{
    GameGraph z = loops().map_weights([](Vertex, const Rational&) { return Rational(0); });
    AlwaysZero a(default_moves(z, 1)), b(default_moves(z, 2));
    std::vector<PlayTrace> traces{run_match(config(z, 1, 1, 100), a, b), run_match(config(z, 1, 1, 100), a, b)};
    auto est = estimate_meanpayoff(traces);
    EXPECT_EQ(*est.exact_min, Rational(0));
    EXPECT_EQ(est.mean, 0.0);
    EXPECT_EQ(est.half_width, 0.0);
}
