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

GameGraph chain()
{
    return parse_game(R"({"vertices":[{"id":"u1","weight":"0"},{"id":"v1","weight":"0"},{"id":"v2","weight":"0"},{"id":"u2","weight":"0"}],
      "edges":[["u1","u1"],["v1","u1"],["v1","v2"],["v2","v1"],["v2","u2"],["u2","u2"]]})");
}

// Independent statement of the two step inequalities: with m = min(1, nu),
// beta = 2nm/(x(x+1)) and nu_y = nu(1 + 2/y),
//   loss: nu_x / (1 - beta) >= nu_{x - nm},   win: nu_x - beta >= nu_{x + n min(1, 1/nu)}.
bool step_inequalities(const Rational& x, const Rational& nu, const Rational& n)
{
    Rational m = nu < 1 ? nu : Rational(1);
    Rational inv = nu > 1 ? Rational(1 / nu) : Rational(1);
    Rational beta = 2 * n * m / (x * (x + 1));
    auto target = [&](const Rational& y) { return Rational(nu + 2 * nu / y); };
    Rational down = x - n * m, up = x + n * inv;
    if (down <= 0 || beta >= 1) return false;
    return target(x) / (1 - beta) >= target(down) && target(x) - beta >= target(up);
}

} // namespace

TEST(Walk, BidExamples)
{
    auto t = potentials(loops(), Rational(1, 2));
    WalkState s{2, 1, 2};
    auto b = max_walk_bid(s, t, 0);
    EXPECT_EQ(b.bid, Rational(1, 3));
    EXPECT_EQ(b.move, 0u);
    s.x = 1;
    EXPECT_EQ(max_walk_bid(s, t, 0).bid, Rational(1));
    PotentialTable flat = potentials(loops().map_weights([](Vertex, const Rational&) { return Rational(0); }), Rational(1, 2));
    EXPECT_EQ(max_walk_bid(s, flat, 0).bid, Rational(0));
}

TEST(Walk, StepRule)
{
    EXPECT_EQ(update_walk({2, 1, 2}, 1, true).x, Rational(3));
    EXPECT_EQ(update_walk({2, 1, 2}, 1, false).x, Rational(1));
    EXPECT_EQ(update_walk({4, 2, 4}, 1, true).x, Rational(9, 2));
    EXPECT_EQ(update_walk({4, 2, 4}, 1, false).x, Rational(3));
    EXPECT_THROW(update_walk({1, 1, 1}, 1, false), Error);
}

TEST(Walk, InequalityExamples)
{
    EXPECT_TRUE(verify_walk_inequalities(2, 1, 1));
    // first inequality is tight: nu_2 / (1 - 1/3) = 3 = nu_1
    EXPECT_EQ(walk_target(1, 2) / (1 - walk_scale(1, 2)), walk_target(1, 1));
    EXPECT_TRUE(verify_walk_inequalities(Rational(7, 3), Rational(5, 2), 0));
    EXPECT_FALSE(verify_walk_inequalities(1, 1, 1));
}

TEST(Walk, InequalitiesAgreeWithIndependentStatement)
{
    oracle::Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
        Rational x(rng.uniform(1, 400), rng.uniform(1, 40));
        Rational nu(rng.uniform(1, 60), rng.uniform(1, 20));
        Rational n(rng.uniform(0, 16), 16);
        x.canonicalize();
        nu.canonicalize();
        n.canonicalize();
        if (!walk_loss_allowed(x, nu, n)) continue;
        EXPECT_TRUE(step_inequalities(x, nu, n)) << x << " " << nu << " " << n;
        EXPECT_TRUE(verify_walk_inequalities(x, nu, n)) << x << " " << nu << " " << n;
    }
}

TEST(Walk, KappaIsSmallestAdmissible)
{
    for (auto [nu, ratio] : std::vector<std::pair<Rational, Rational>>{{1, Rational(11, 9)}, {Rational(1, 2), 1}, {2, 3}, {1, 2}}) {
        Rational k = choose_kappa(nu, ratio);
        EXPECT_LT(walk_target(nu, k), ratio);
        if (k > 1) {
            EXPECT_GE(walk_target(nu, Rational(k - 1)), ratio);
        }
    }
    EXPECT_EQ(choose_kappa(1, Rational(11, 9)), Rational(10));
    EXPECT_THROW(choose_kappa(1, 1), Error);
}

TEST(Queue, Examples)
{
    QueueState s;
    s.eps = 1;
    s.round = 3;
    EXPECT_EQ(queue_min_bid(s), Rational(1, 8));

    QueueState q;
    q.round = 1;
    q = queue_min_observe(q, false, Rational(1, 5));
    q = queue_min_observe(q, false, Rational(3, 10));
    EXPECT_EQ(queue_min_bid(q), Rational(3, 10));
    // Min wins once: the maximum (the amount just paid) leaves the queue
    auto qmax = queue_min_observe(q, true, Rational(1, 10));
    EXPECT_EQ(qmax.queue, (std::multiset<Rational>{Rational(1, 5)}));
    EXPECT_EQ(queue_min_bid(qmax), Rational(1, 5));
    // remove-minimum option
    q.removal = QueueRemoval::Minimal;
    auto qmin = queue_min_observe(q, true, Rational(1, 10));
    EXPECT_EQ(qmin.queue, (std::multiset<Rational>{Rational(3, 10)}));
    EXPECT_EQ(queue_min_bid(qmin), Rational(3, 10));

    QueueState m2;
    m2.multiplier = 2;
    m2 = queue_min_observe(m2, false, Rational(1, 5));
    EXPECT_EQ(m2.queue, (std::multiset<Rational>{Rational(1, 5), Rational(1, 5)}));
}

TEST(Warmup, Examples)
{
    EXPECT_EQ(triangle_lower(2), Rational(1));
    EXPECT_EQ(triangle_upper(2), Rational(3));
    WarmupState s{1, Rational(1, 100)};
    EXPECT_EQ(warmup_bid(s), Rational(1, 4) + Rational(1, 200));
    EXPECT_GT(warmup_bid(s), Rational(1, 4));
    EXPECT_EQ(warmup_ratio_target(1), Rational(3, 4));
    // T_{k+1}/(k+1)^2 = (k+2)/(2k+2)
    for (long k = 1; k < 10; ++k) EXPECT_EQ(warmup_ratio_target(k), oracle::frac(k + 2, 2 * k + 2));
    auto w = warmup_observe(s, true);
    EXPECT_EQ(w.k, 2);
    EXPECT_EQ(w.eps, Rational(1, 200));
    EXPECT_EQ(warmup_observe(s, false).k, 0);
}

TEST(Baselines, Bids)
{
    MoveTable moves{0, 0};
    ConstantFraction half(Rational(1, 2), moves);
    Rational one = 1, two = 2;
    EXPECT_EQ(half.act({1, 0, one, two}).bid, Rational(1, 2));
    AlwaysZero zero(moves);
    for (std::size_t r = 1; r < 5; ++r) EXPECT_EQ(zero.act({r, 0, one, two}).bid, Rational(0));
    UniformRandom u1(4, moves), u2(4, moves);
    GameGraph g = loops();
    u1.begin({&g, 0, one, two, std::nullopt, 0, 1});
    u2.begin({&g, 0, one, two, std::nullopt, 0, 1});
    for (std::size_t r = 1; r < 50; ++r) {
        auto a = u1.act({r, 0, one, two}).bid;
        EXPECT_EQ(a, u2.act({r, 0, one, two}).bid);
        EXPECT_GE(a, 0);
        EXPECT_LE(a, one);
    }
}

TEST(SlushFund, ChainSetup)
{
    GameGraph g = chain();
    FixedPointOptions opt;
    opt.tol = 1e-13;
    auto th = solve_reachability(g, g.at("u1"), opt);
    auto s = make_slush_fund_state(g, th);
    EXPECT_NEAR(s.delta[g.at("v1")].get_d(), 1.0, 1e-9);
    EXPECT_EQ(s.move[g.at("v1")], g.at("u1"));
    EXPECT_EQ(s.move[g.at("v2")], g.at("v1"));
    for (std::size_t i = 1; i < s.schedule.size(); ++i) {
        Rational below = 0;
        for (std::size_t j = 0; j < i; ++j) below += s.schedule[j];
        EXPECT_LT(below, s.delta_min / 2 * s.schedule[i]);
    }
    SlushFundBidder b(g, th);
    Rational own(7, 10), opp(3, 10);
    b.begin({&g, g.at("v2"), own, opp, std::nullopt, 0, 1});
    const auto& st = b.state();
    EXPECT_EQ(st.real + st.slush, own);
    // invariant 1 initially: f(v) = x' / (x' + y)
    EXPECT_EQ(Rational(st.real / (st.real + opp)), st.f[g.at("v2")]);
}

TEST(SlushFund, ReachesTargetAgainstAdversaries)
{
    GameGraph g = chain();
    FixedPointOptions opt;
    opt.tol = 1e-13;
    auto th = solve_reachability(g, g.at("u1"), opt);
    MoveTable away(g.size());
    for (Vertex v = 0; v < g.size(); ++v) away[v] = th.plus[v];
    for (int p = 0; p <= 10; ++p) {
        SlushFundBidder max(g, th);
        ConstantFraction min(oracle::frac(p, 10), away);
        MatchConfig cfg;
        cfg.game = &g;
        cfg.start = g.at("v2");
        cfg.budget1 = Rational(16, 25);
        cfg.budget2 = Rational(9, 25);
        cfg.rounds = 2000;
        cfg.stop_at = {g.at("u1"), g.at("u2")};
        auto t = run_match(cfg, max, min);
        EXPECT_TRUE(t.stopped) << p;
        EXPECT_EQ(t.path.back(), g.at("u1")) << p;
        EXPECT_EQ(t.violation_count, 0u) << p << " " << (t.violations.empty() ? "" : t.violations.front());
    }
}

TEST(SlushFund, IdlesOnceTheTargetIsReached)
{
    GameGraph g = chain();
    FixedPointOptions opt;
    opt.tol = 1e-13;
    SlushFundBidder max(g, solve_reachability(g, g.at("u1"), opt));
    MoveTable away(g.size());
    for (Vertex v = 0; v < g.size(); ++v) away[v] = g.successors(v).back();
    ConstantFraction min(Rational(1, 2), away);
    MatchConfig cfg;
    cfg.game = &g;
    cfg.start = g.at("v1");
    cfg.budget1 = Rational(4, 5);
    cfg.budget2 = Rational(1, 5);
    cfg.rounds = 300;
    auto t = run_match(cfg, max, min);
    EXPECT_EQ(t.path.back(), g.at("u1"));
    EXPECT_EQ(t.violation_count, 0u);
    EXPECT_EQ(t.records.back().bid1, Rational(0));
}

TEST(Factory, ParsesSpecs)
{
    auto s = parse_strategy_spec("queue:m=2,removal=min");
    EXPECT_EQ(s.name, "queue");
    EXPECT_EQ(s.params.at("m"), "2");
    EXPECT_EQ(s.params.at("removal"), "min");
    EXPECT_THROW(parse_strategy_spec("const:p"), Error);
    EXPECT_THROW(parse_strategy_spec(":p=1"), Error);
    GameGraph g = loops();
    EXPECT_THROW(make_bidder(parse_strategy_spec("const:q=1"), {&g, 1, 0}), Error);
    EXPECT_THROW(make_bidder(parse_strategy_spec("nope"), {&g, 1, 0}), Error);
    auto walk = make_bidder(parse_strategy_spec("walk"), {&g, 1, 0});
    EXPECT_EQ(*walk.walk_ratio, Rational(1, 2));
    auto mirror = make_bidder(parse_strategy_spec("walk:r=2/3"), {&g, 2, 0});
    EXPECT_EQ(mirror.table->value, Rational(1, 3));
}
