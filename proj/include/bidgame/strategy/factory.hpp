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
#include <map>
#include <memory>
#include <set>
#include <string>

#include "bidgame/scc.hpp"
#include "bidgame/strategy/baseline.hpp"
#include "bidgame/strategy/queue.hpp"
#include "bidgame/strategy/reachability.hpp"
#include "bidgame/strategy/walk.hpp"
#include "bidgame/strategy/warmup.hpp"

namespace bidgame {

/// "name" or "name:key=value,key=value".
struct StrategySpec {
    std::string name;
    std::map<std::string, std::string> params;

    const std::string* find(const std::string& key) const
    {
        auto it = params.find(key);
        return it == params.end() ? nullptr : &it->second;
    }
};

inline StrategySpec parse_strategy_spec(const std::string& text)
{
    StrategySpec s;
    auto colon = text.find(':');
    s.name = text.substr(0, colon);
    if (s.name.empty()) throw Error(ErrorKind::InvalidArgument, "empty strategy name");
    if (colon == std::string::npos) return s;
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::InvalidArgument, "strategy parameter '" + item + "' is not key=value");
        if (!s.params.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
            throw Error(ErrorKind::InvalidArgument, "repeated strategy parameter " + item.substr(0, eq));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return s;
}

/// Positional moves for baseline strategies: the potential witnesses at
/// ratio 1/2 on strongly connected games, else the first (Max) or last (Min) successor.
inline MoveTable default_moves(const GameGraph& g, int player)
{
    if (is_strongly_connected(g)) {
        PotentialTable t = potentials(g, Rational(1, 2));
        return player == 1 ? t.plus : t.minus;
    }
    MoveTable m(g.size());
    for (Vertex v = 0; v < g.size(); ++v) m[v] = player == 1 ? g.successors(v).front() : g.successors(v).back();
    return m;
}

struct BidderContext {
    const GameGraph* game = nullptr;
    int player = 1;
    std::uint64_t seed = 0;
    double tol = default_tolerance;
};

struct BuiltBidder {
    std::unique_ptr<Bidder> bidder;
    std::optional<Rational> walk_ratio; // walk: ratio of its potentials
    std::optional<PotentialTable> table; // walk: its potential table (negated game for Player 2)
    long initial_energy = 0; // warmup: k
};

inline BuiltBidder make_bidder(const StrategySpec& spec, const BidderContext& ctx)
{
    const GameGraph& g = *ctx.game;
    std::set<std::string> allowed;
    auto param = [&](const std::string& key) -> const std::string* {
        allowed.insert(key);
        return spec.find(key);
    };
    auto vertex = [&](const std::string& id) {
        auto v = g.find(id);
        if (!v) throw Error(ErrorKind::InvalidArgument, "unknown vertex " + id);
        return *v;
    };
    auto moves = default_moves(g, ctx.player);
    BuiltBidder out;
    if (spec.name == "walk") {
        // Player 2 runs the walk on the negated game
        const GameGraph played = ctx.player == 1 ? g : g.map_weights([](Vertex, const Rational& w) { return Rational(-w); });
        Rational r;
        if (auto p = param("r"))
            r = parse_rational(*p);
        else
            r = critical_ratio(played, ctx.tol).hi;
        if (r <= 0 || r >= 1) throw Error(ErrorKind::InvalidArgument, "walk ratio must lie in (0,1), got " + to_string(r));
        out.table = potentials(played, r);
        out.walk_ratio = r;
        out.bidder = std::make_unique<WalkBidder>(*out.table);
    } else if (spec.name == "queue") {
        unsigned m = 1;
        if (auto p = param("m")) m = static_cast<unsigned>(std::stoul(*p));
        std::optional<Rational> eps;
        if (auto p = param("eps")) eps = parse_rational(*p);
        QueueRemoval removal = QueueRemoval::Maximal;
        if (auto p = param("removal")) {
            if (*p == "min")
                removal = QueueRemoval::Minimal;
            else if (*p != "max")
                throw Error(ErrorKind::InvalidArgument, "queue removal must be max or min");
        }
        out.bidder = std::make_unique<QueueBidder>(moves, m, eps, removal);
    } else if (spec.name == "const") {
        Rational p(1, 2);
        if (auto v = param("p")) p = parse_rational(*v);
        out.bidder = std::make_unique<ConstantFraction>(p, moves);
    } else if (spec.name == "uniform") {
        std::uint64_t seed = ctx.seed;
        if (auto v = param("seed")) seed = std::stoull(*v);
        out.bidder = std::make_unique<UniformRandom>(seed, moves);
    } else if (spec.name == "zero") {
        out.bidder = std::make_unique<AlwaysZero>(moves);
    } else if (spec.name == "warmup") {
        if (ctx.player != 1) throw Error(ErrorKind::InvalidArgument, "warmup is a Player 1 (Max) strategy");
        long k = 1;
        if (auto v = param("k")) k = std::stol(*v);
        Vertex up = moves.front();
        if (auto v = param("up")) up = vertex(*v);
        out.initial_energy = k;
        out.bidder = std::make_unique<WarmupBidder>(up, k);
    } else if (spec.name == "slush") {
        if (ctx.player != 1) throw Error(ErrorKind::InvalidArgument, "slush is a Player 1 (Max) strategy");
        const std::string* t = param("target");
        if (!t) throw Error(ErrorKind::InvalidArgument, "slush needs target=<vertex>");
        FixedPointOptions opt;
        opt.tol = ctx.tol;
        out.bidder = std::make_unique<SlushFundBidder>(g, solve_reachability(g, vertex(*t), opt));
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown strategy " + spec.name);
    }
    for (const auto& [key, value] : spec.params)
        if (!allowed.count(key)) throw Error(ErrorKind::InvalidArgument, "strategy " + spec.name + " has no parameter " + key);
    return out;
}

} // namespace bidgame
