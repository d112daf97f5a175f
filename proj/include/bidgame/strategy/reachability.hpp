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
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bidgame/scc.hpp"
#include "bidgame/strategy/bidder.hpp"
#include "bidgame/threshold.hpp"

namespace bidgame {

/// Bookkeeping of the reachability strategy: the budget splits into a real
/// budget x' that keeps x'/(x'+y) = f(v) and a slush fund eps'.
struct SlushFundState {
    Rational real;         // x'
    Rational slush;        // eps'
    Rational slush_ref;    // eps' when the opponent last won
    std::vector<Rational> f;      // thresholds as exact rationals
    std::vector<Rational> delta;  // Delta(v)
    std::vector<Rational> step;   // delta_v = gamma * delta_{|V| - dist(v)}
    std::vector<Vertex> move;     // v- when f(v) > 0, else next vertex on a shortest path
    std::vector<Rational> schedule; // delta_1 .. delta_|V|
    Rational gamma, delta_min;
    std::vector<std::size_t> dist;
    std::vector<bool> target; // reached: the objective is met, bid 0 from here on
};

/// Precomputes Delta, the delta schedule and the moves from a threshold map
/// whose 0-boundary vertices are Player 1's targets.
inline SlushFundState make_slush_fund_state(const GameGraph& g, const ThresholdMap& th)
{
    const std::size_t n = g.size();
    SlushFundState s;
    std::vector<Vertex> targets;
    s.target.assign(n, false);
    for (Vertex v = 0; v < n; ++v) {
        s.f.push_back(from_double(th.th[v]));
        if (th.boundary[v] && th.th[v] == 0) {
            targets.push_back(v);
            s.target[v] = true;
        }
    }
    if (targets.empty()) throw Error(ErrorKind::InvalidArgument, "threshold map has no target (boundary value 0)");
    auto bfs = distance_to(g, targets);

    s.delta.resize(n);
    s.move.resize(n);
    s.dist.assign(n, 0);
    s.delta_min = 1;
    for (Vertex v = 0; v < n; ++v) {
        Vertex lo = argmin_successor(g, v, s.f);
        if (s.f[v] > 0 && s.f[lo] < 1) {
            s.delta[v] = (s.f[v] - s.f[lo]) / (s.f[v] * (1 - s.f[lo]));
            if (s.delta[v] > 0) s.delta_min = min(s.delta_min, s.delta[v]);
        }
        if (s.f[v] > 0) {
            s.move[v] = lo;
        } else {
            s.move[v] = g.successors(v).front();
            for (Vertex u : g.successors(v))
                if (bfs[u] != static_cast<std::size_t>(-1) && bfs[u] + 1 == bfs[v]) {
                    s.move[v] = u;
                    break;
                }
        }
    }
    // steps to a target when Player 1 wins every bidding from v
    for (Vertex v = 0; v < n; ++v) {
        std::size_t d = 0;
        Vertex cur = v;
        std::vector<bool> seen(n, false);
        while (!(th.boundary[cur] && th.th[cur] == 0) && !seen[cur] && d < n) {
            seen[cur] = true;
            cur = s.move[cur];
            ++d;
        }
        bool reached = th.boundary[cur] && th.th[cur] == 0;
        s.dist[v] = reached ? d : (bfs[v] == static_cast<std::size_t>(-1) ? n - 1 : bfs[v]);
        if (s.dist[v] > n - 1) s.dist[v] = n - 1;
    }

    // delta_i = K^{i-1} with K >= 1 + 4/Delta_min gives sum_{j<i} delta_j < Delta_min/2 delta_i
    Integer k = ceil(Rational(1 + 4 / s.delta_min));
    Rational sum = 0, d = 1;
    for (std::size_t i = 0; i < n; ++i) {
        s.schedule.push_back(d);
        sum += d;
        d *= k;
    }
    s.gamma = 1 / (sum + 1);
    for (Vertex v = 0; v < n; ++v) s.step.push_back(s.gamma * s.schedule[n - s.dist[v] - 1]);
    return s;
}

inline BidAction reachability_bid(const SlushFundState& s, Vertex v)
{
    if (s.target[v]) return {Rational(0), s.move[v]};
    return {Rational(s.delta[v] * s.real + s.step[v] * s.slush_ref), s.move[v]};
}

/// Player 1's slush-fund reachability strategy.
class SlushFundBidder : public Bidder {
public:
    SlushFundBidder(const GameGraph& g, const ThresholdMap& th) : state_(make_slush_fund_state(g, th)) {}

    std::string name() const override { return "slush"; }

    void begin(const MatchStart& m) override
    {
        const Rational& fv = state_.f.at(m.start);
        if (fv >= 1) throw Error(ErrorKind::PreconditionViolated, "threshold 1 at the start vertex");
        state_.real = fv / (1 - fv) * m.opponent_budget;
        state_.slush = m.own_budget - state_.real;
        if (state_.slush <= 0)
            throw Error(ErrorKind::PreconditionViolated, "initial ratio does not exceed the threshold");
        state_.slush_ref = state_.slush;
        normalized_ref_ = m.opponent_budget > 0 ? Rational(state_.slush / m.opponent_budget) : Rational(0);
        min_growth_.reset();
        violation_.reset();
    }

    BidAction act(const BidContext& c) override
    {
        BidAction a = reachability_bid(state_, c.vertex);
        if (a.bid > c.own_budget) a.bid = c.own_budget;
        last_bid_ = a.bid;
        delta_v_ = state_.delta[c.vertex];
        step_v_ = state_.step[c.vertex];
        return a;
    }

    void observe(const RoundOutcome& o) override
    {
        violation_.reset();
        if (state_.target[o.vertex]) return;
        if (o.won) {
            state_.real -= delta_v_ * state_.real;
            state_.slush -= step_v_ * state_.slush_ref;
        } else {
            const Rational& fn = state_.f.at(o.next);
            if (fn >= 1) {
                violation_ = "opponent reached a vertex with threshold 1";
                return;
            }
            Rational needed = fn / (1 - fn) * o.opponent_budget;
            // a negative transfer absorbs the threshold approximation error
            state_.slush += state_.real - needed;
            state_.real = needed;
            state_.slush_ref = state_.slush;
            if (o.opponent_budget > 0) {
                Rational norm = state_.slush / o.opponent_budget;
                if (normalized_ref_ > 0) {
                    Rational factor = norm / normalized_ref_;
                    if (!min_growth_ || factor < *min_growth_) min_growth_ = factor;
                    if (factor <= 1) violation_ = "slush fund did not grow on an opponent win";
                }
                normalized_ref_ = norm;
            }
        }
        if (state_.slush <= 0) violation_ = "slush fund exhausted";
        if (state_.real + state_.slush != o.own_budget) violation_ = "real budget and slush fund do not add up";
    }

    std::optional<std::string> audit() const override { return violation_; }

    const SlushFundState& state() const noexcept { return state_; }
    /// Smallest growth factor of slush / opponent budget over opponent wins.
    const std::optional<Rational>& min_growth() const noexcept { return min_growth_; }

private:
    SlushFundState state_;
    Rational last_bid_, delta_v_, step_v_, normalized_ref_;
    std::optional<Rational> min_growth_;
    std::optional<std::string> violation_;
};

} // namespace bidgame
