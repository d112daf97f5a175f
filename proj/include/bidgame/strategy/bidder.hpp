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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bidgame/graph.hpp"

namespace bidgame {

/// What a bidder learns when a play starts.
struct MatchStart {
    const GameGraph* game = nullptr;
    Vertex start = 0;
    Rational own_budget, opponent_budget;
    // Bid grid. When set, budgets start on the grid and every strategy keeps
    // its bids on it, which bounds the size of the exact budget ledger.
    std::optional<Rational> quantum;
    std::uint64_t seed = 0;
    int player = 1; // 1 = Max, 2 = Min
};

struct BidContext {
    std::size_t round; // 1-based
    Vertex vertex;
    const Rational& own_budget;
    const Rational& opponent_budget;
};

struct BidAction {
    Rational bid;
    Vertex move; // successor taken if this bid wins
};

struct RoundOutcome {
    std::size_t round;
    Vertex vertex;
    bool won;
    const Rational& own_bid;
    const Rational& opponent_bid;
    Vertex next;
    const Rational& own_budget; // after payment
    const Rational& opponent_budget;
};

class Bidder {
public:
    virtual ~Bidder() = default;
    virtual std::string name() const = 0;
    virtual void begin(const MatchStart&) {}
    virtual BidAction act(const BidContext& ctx) = 0;
    virtual void observe(const RoundOutcome&) {}
    /// Invariant violation detected in the last observed round, if any.
    virtual std::optional<std::string> audit() const { return std::nullopt; }
    virtual std::optional<Rational> walk_position() const { return std::nullopt; }
};

/// Successor chosen at every vertex; used by strategies whose moves are positional.
using MoveTable = std::vector<Vertex>;

inline Rational snap_up(const Rational& x, const std::optional<Rational>& q)
{
    return q ? ceil_to_multiple(x, *q) : x;
}

inline Rational snap_down(const Rational& x, const std::optional<Rational>& q)
{
    return q ? floor_to_multiple(x, *q) : x;
}

} // namespace bidgame
