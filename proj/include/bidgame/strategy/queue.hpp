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
#include <set>
#include <string>

#include "bidgame/strategy/bidder.hpp"

namespace bidgame {

enum class QueueRemoval { Maximal, Minimal };

/// Min's queue strategy: every winning bid b of the opponent is owed back m
/// times; Min bids the largest owed amount, or eps 2^-i in round i when
/// nothing is owed.
struct QueueState {
    std::multiset<Rational> queue;
    unsigned multiplier = 1;
    std::size_t round = 1;
    Rational eps = 1;
    QueueRemoval removal = QueueRemoval::Maximal;
};

inline Rational queue_min_bid(const QueueState& s)
{
    if (s.queue.empty()) return Rational(s.eps * pow2(-static_cast<long>(s.round)));
    return *s.queue.rbegin();
}

/// Advances one round. `opponent_bid` is the opponent's bid when it won.
inline QueueState queue_min_observe(QueueState s, bool own_win, const Rational& opponent_bid)
{
    if (own_win) {
        if (!s.queue.empty()) {
            if (s.removal == QueueRemoval::Maximal)
                s.queue.erase(std::prev(s.queue.end()));
            else
                s.queue.erase(s.queue.begin());
        }
    } else {
        for (unsigned k = 0; k < s.multiplier; ++k) s.queue.insert(opponent_bid);
    }
    ++s.round;
    return s;
}

class QueueBidder : public Bidder {
public:
    QueueBidder(MoveTable moves, unsigned multiplier = 1, std::optional<Rational> eps = std::nullopt,
                QueueRemoval removal = QueueRemoval::Maximal)
        : moves_(std::move(moves)), eps_(std::move(eps))
    {
        if (multiplier < 1) throw Error(ErrorKind::InvalidArgument, "queue multiplier must be >= 1");
        state_.multiplier = multiplier;
        state_.removal = removal;
    }

    std::string name() const override { return "queue"; }

    void begin(const MatchStart& m) override
    {
        quantum_ = m.quantum;
        state_.queue.clear();
        state_.round = 1;
        state_.eps = eps_ ? *eps_ : Rational(m.own_budget * pow2(-20));
        own_wins_ = opponent_wins_ = empty_events_ = ratio_failures_ = capped_ = 0;
    }

    BidAction act(const BidContext& c) override
    {
        state_.round = c.round;
        Rational bid = queue_min_bid(state_);
        if (state_.queue.empty()) bid = snap_down(bid, quantum_);
        if (bid > c.own_budget) {
            bid = c.own_budget;
            ++capped_;
        }
        return {bid, moves_.at(c.vertex)};
    }

    void observe(const RoundOutcome& o) override
    {
        bool had_items = !state_.queue.empty();
        state_ = queue_min_observe(std::move(state_), o.won, o.opponent_bid);
        if (o.won)
            ++own_wins_;
        else
            ++opponent_wins_;
        if (o.won && had_items && state_.queue.empty()) {
            ++empty_events_;
            if (own_wins_ < static_cast<std::size_t>(state_.multiplier) * opponent_wins_) ++ratio_failures_;
        }
    }

    const QueueState& state() const noexcept { return state_; }
    std::size_t empty_events() const noexcept { return empty_events_; }
    /// Times the queue emptied while own wins < m * opponent wins.
    std::size_t ratio_failures() const noexcept { return ratio_failures_; }
    /// Rounds where the owed amount exceeded the budget and the bid was capped.
    std::size_t capped_bids() const noexcept { return capped_; }

private:
    MoveTable moves_;
    std::optional<Rational> eps_;
    std::optional<Rational> quantum_;
    QueueState state_;
    std::size_t own_wins_ = 0, opponent_wins_ = 0, empty_events_ = 0, ratio_failures_ = 0, capped_ = 0;
};

} // namespace bidgame
