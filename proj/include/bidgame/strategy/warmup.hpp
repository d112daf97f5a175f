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

#include "bidgame/strategy/bidder.hpp"

namespace bidgame {

inline Rational triangle_lower(long k) { return Rational(k * (k - 1) / 2); } // t_k
inline Rational triangle_upper(long k) { return Rational(k * (k + 1) / 2); } // T_k

/// Energy coordinate k and slush eps, in units where the total is (k+1)^2 boxes of size 1/(k+1)^2.
struct WarmupState {
    long k = 1;
    Rational eps = 0;
};

/// One box plus half the slush fund.
inline Rational warmup_bid(const WarmupState& s)
{
    if (s.k < 1) throw Error(ErrorKind::PreconditionViolated, "warm-up bid needs energy >= 1");
    return Rational(Rational(1, (s.k + 1) * (s.k + 1)) + s.eps / 2);
}

inline WarmupState warmup_observe(WarmupState s, bool won)
{
    if (won) {
        s.eps /= 2;
        ++s.k;
    } else {
        --s.k;
    }
    return s;
}

/// Ratio Max keeps above at energy k: T_{k+1} / (k+1)^2.
inline Rational warmup_ratio_target(long k) { return Rational(triangle_upper(k + 1) / ((k + 1) * (k + 1))); }

/// Energy-game strategy on the two-loop game. Min's budget is read as
/// t_{k+1} boxes; Max bids one box plus half his surplus and moves to `up`.
/// On a bid grid the surplus term shrinks to a single grid step, which keeps
/// the win strict without halving below the grid.
class WarmupBidder : public Bidder {
public:
    WarmupBidder(Vertex up, long initial_energy) : up_(up), k0_(initial_energy)
    {
        if (initial_energy < 1) throw Error(ErrorKind::InvalidArgument, "warm-up needs initial energy >= 1");
    }

    std::string name() const override { return "warmup"; }

    void begin(const MatchStart& m) override
    {
        quantum_ = m.quantum;
        k_ = k0_;
        violation_.reset();
        if (!holds(m.own_budget, m.opponent_budget))
            throw Error(ErrorKind::PreconditionViolated, "initial ratio not above T_{k+1}/(k+1)^2");
    }

    BidAction act(const BidContext& c) override
    {
        if (k_ < 1) return {Rational(0), up_};
        Rational box = c.opponent_budget / triangle_lower(k_ + 1);
        Rational bid;
        if (quantum_) {
            bid = ceil_to_multiple(box, *quantum_) + *quantum_;
        } else {
            Rational slush = c.own_budget - triangle_upper(k_ + 1) * box;
            bid = box + slush / 2;
        }
        if (bid > c.own_budget) bid = c.own_budget;
        return {bid, up_};
    }

    void observe(const RoundOutcome& o) override
    {
        k_ += o.won ? 1 : -1;
        violation_.reset();
        if (k_ < 1)
            violation_ = "energy coordinate reached " + std::to_string(k_);
        else if (!holds(o.own_budget, o.opponent_budget))
            violation_ = "ratio not above T_{k+1}/(k+1)^2 at k = " + std::to_string(k_);
    }

    std::optional<std::string> audit() const override { return violation_; }
    long energy_coordinate() const noexcept { return k_; }

private:
    bool holds(const Rational& own, const Rational& opp) const
    {
        // own / (own + opp) > T_{k+1} / (k+1)^2  <=>  own t_{k+1} > opp T_{k+1}
        return own * triangle_lower(k_ + 1) > opp * triangle_upper(k_ + 1);
    }

    Vertex up_;
    long k0_, k_ = 1;
    std::optional<Rational> quantum_;
    std::optional<std::string> violation_;
};

} // namespace bidgame
