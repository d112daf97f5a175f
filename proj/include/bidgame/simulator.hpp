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

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bidgame/potentials.hpp"
#include "bidgame/strategy/bidder.hpp"

namespace bidgame {

enum class PaymentRule { Poorman, Richman, SecondPricePoorman };
enum class TieBreak { MinWins, MaxWins, Alternate };

inline const char* to_string(PaymentRule r)
{
    switch (r) {
    case PaymentRule::Poorman: return "poorman";
    case PaymentRule::Richman: return "richman";
    case PaymentRule::SecondPricePoorman: return "second-price";
    }
    return "?";
}

inline const char* to_string(TieBreak t)
{
    switch (t) {
    case TieBreak::MinWins: return "min-wins";
    case TieBreak::MaxWins: return "max-wins";
    case TieBreak::Alternate: return "alternate";
    }
    return "?";
}

struct MatchConfig {
    const GameGraph* game = nullptr;
    Vertex start = 0;
    Rational budget1, budget2; // Player 1 = Max, Player 2 = Min
    PaymentRule rule = PaymentRule::Poorman;
    TieBreak tie = TieBreak::MinWins;
    std::size_t rounds = 0;
    std::uint64_t seed = 0;
    std::optional<Rational> quantum;
    Rational initial_energy = 0;
    std::vector<Vertex> stop_at;          // play ends on arrival
    std::optional<Rational> energy_floor; // monitored lower bound on the energy
    bool keep_records = true;
};

/// Bid grid (B1 + B2 denominators) * 2^-bits: budgets start on it and
/// every bundled strategy keeps its bids on it.
inline Rational default_quantum(const Rational& b1, const Rational& b2, long bits = 50)
{
    Integer den = lcm(b1.get_den(), b2.get_den());
    return Rational(pow2(-bits) / den);
}

struct RoundRecord {
    std::size_t round;
    Vertex vertex;
    Rational bid1, bid2;
    int winner;
    Rational budget1, budget2;
    Rational energy;
    std::optional<Rational> walk_x;
};

struct PlayTrace {
    std::vector<Vertex> path; // v0 .. vN, kept when records are
    std::vector<RoundRecord> records;
    std::size_t rounds_played = 0;
    std::size_t wins1 = 0, wins2 = 0;
    Rational budget1, budget2;
    Rational energy;     // initial energy + weights of departed vertices
    Rational min_energy; // over all prefixes, including the initial one
    // min over n >= ceil(N/2) of E(pi^n)/n, E without the initial energy
    std::optional<Rational> min_tail_average;
    std::optional<Rational> max_tail_average; // same window, for Min-side guarantees
    bool stopped = false; // reached a stop vertex
    std::size_t violation_count = 0;
    std::vector<std::string> violations; // first few, with round numbers

    void add_violation(std::size_t round, const std::string& what)
    {
        ++violation_count;
        if (violations.size() < 20) violations.push_back("round " + std::to_string(round) + ": " + what);
    }
};

class IllegalBidError : public Error {
public:
    IllegalBidError(int player, std::size_t round, const std::string& what, PlayTrace partial)
        : Error(ErrorKind::IllegalBid, "player " + std::to_string(player) + " in round " + std::to_string(round) + ": " + what),
          player_(player), round_(round), partial_(std::move(partial))
    {
    }

    int player() const noexcept { return player_; }
    std::size_t round() const noexcept { return round_; }
    const PlayTrace& partial() const noexcept { return partial_; }

private:
    int player_;
    std::size_t round_;
    PlayTrace partial_;
};

inline PlayTrace run_match(const MatchConfig& cfg, Bidder& p1, Bidder& p2)
{
    if (!cfg.game) throw Error(ErrorKind::InvalidArgument, "match without a game");
    const GameGraph& g = *cfg.game;
    if (cfg.start >= g.size()) throw Error(ErrorKind::InvalidArgument, "start vertex out of range");
    if (cfg.budget1 < 0 || cfg.budget2 < 0 || cfg.budget1 + cfg.budget2 <= 0)
        throw Error(ErrorKind::InvalidArgument, "budgets must be >= 0 with positive total");
    if (cfg.quantum && (*cfg.quantum <= 0 || Rational(cfg.budget1 / *cfg.quantum).get_den() != 1 ||
                        Rational(cfg.budget2 / *cfg.quantum).get_den() != 1))
        throw Error(ErrorKind::InvalidArgument, "budgets are not multiples of the bid grid");

    std::vector<bool> stop(g.size(), false);
    for (Vertex v : cfg.stop_at) stop.at(v) = true;

    PlayTrace t;
    t.budget1 = cfg.budget1;
    t.budget2 = cfg.budget2;
    t.budget1.canonicalize();
    t.budget2.canonicalize();
    t.energy = cfg.initial_energy;
    t.min_energy = t.energy;
    const Rational total = cfg.budget1 + cfg.budget2;
    Vertex v = cfg.start;
    if (cfg.keep_records) t.path.push_back(v);

    p1.begin({&g, v, t.budget1, t.budget2, cfg.quantum, cfg.seed, 1});
    p2.begin({&g, v, t.budget2, t.budget1, cfg.quantum, cfg.seed, 2});

    const std::size_t tail_from = (cfg.rounds + 1) / 2;
    Rational tail_best, tail_worst;
    std::size_t tail_n = 0, tail_m = 0;
    std::size_t ties = 0;
    Rational path_energy = 0, paid, before;

    for (std::size_t round = 1; round <= cfg.rounds && !stop[v]; ++round) {
        BidAction a1 = p1.act({round, v, t.budget1, t.budget2});
        BidAction a2 = p2.act({round, v, t.budget2, t.budget1});
        auto check = [&](int who, const BidAction& a, const Rational& budget) {
            std::string why;
            if (a.bid < 0)
                why = "negative bid " + to_string(a.bid);
            else if (a.bid > budget)
                why = "bid " + to_string(a.bid) + " exceeds budget " + to_string(budget);
            else if (!g.has_edge(v, a.move))
                why = "move to non-successor";
            if (!why.empty()) throw IllegalBidError(who, round, why, t);
        };
        check(1, a1, t.budget1);
        check(2, a2, t.budget2);

        int winner;
        if (a1.bid != a2.bid) {
            winner = a1.bid > a2.bid ? 1 : 2;
        } else if (cfg.tie == TieBreak::MinWins) {
            winner = 2;
        } else if (cfg.tie == TieBreak::MaxWins) {
            winner = 1;
        } else {
            winner = ties++ % 2 == 0 ? 2 : 1;
        }
        Rational& wb = winner == 1 ? t.budget1 : t.budget2;
        Rational& lb = winner == 1 ? t.budget2 : t.budget1;
        const Rational& win_bid = winner == 1 ? a1.bid : a2.bid;
        const Rational& lose_bid = winner == 1 ? a2.bid : a1.bid;
        before = t.budget1 + t.budget2;
        paid = cfg.rule == PaymentRule::SecondPricePoorman ? lose_bid : win_bid;
        wb -= paid;
        if (cfg.rule == PaymentRule::Richman) lb += paid;
        if (cfg.rule == PaymentRule::Richman ? t.budget1 + t.budget2 != total : t.budget1 + t.budget2 != before - paid)
            t.add_violation(round, "budget ledger out of balance");

        const Rational& w = g.weight(v);
        t.energy += w;
        path_energy += w;
        Vertex next = winner == 1 ? a1.move : a2.move;
        (winner == 1 ? t.wins1 : t.wins2)++;
        t.rounds_played = round;
        if (t.energy < t.min_energy) t.min_energy = t.energy;
        if (cfg.energy_floor && t.energy < *cfg.energy_floor)
            t.add_violation(round, "energy " + to_string(t.energy) + " below " + to_string(*cfg.energy_floor));
        if (round >= tail_from) {
            // path_energy / round < tail_best / tail_n
            if (tail_n == 0 || path_energy * static_cast<unsigned long>(tail_n) < tail_best * static_cast<unsigned long>(round)) {
                tail_best = path_energy;
                tail_n = round;
            }
            if (tail_m == 0 || path_energy * static_cast<unsigned long>(tail_m) > tail_worst * static_cast<unsigned long>(round)) {
                tail_worst = path_energy;
                tail_m = round;
            }
        }

        p1.observe({round, v, winner == 1, a1.bid, a2.bid, next, t.budget1, t.budget2});
        p2.observe({round, v, winner == 2, a2.bid, a1.bid, next, t.budget2, t.budget1});
        if (auto bad = p1.audit()) t.add_violation(round, "player 1: " + *bad);
        if (auto bad = p2.audit()) t.add_violation(round, "player 2: " + *bad);

        if (cfg.keep_records) {
            auto x = p1.walk_position();
            if (!x) x = p2.walk_position();
            t.records.push_back({round, v, a1.bid, a2.bid, winner, t.budget1, t.budget2, t.energy, x});
            t.path.push_back(next);
        }
        v = next;
    }
    t.stopped = stop[v];
    if (tail_n > 0) t.min_tail_average = Rational(tail_best / static_cast<unsigned long>(tail_n));
    if (tail_m > 0) t.max_tail_average = Rational(tail_worst / static_cast<unsigned long>(tail_m));
    return t;
}

/// Path inequality Pot(v_1) - Pot(v_n) <= E + nu G - I on the
/// value-shifted weights, where a step counts as a Max win iff it moves to v+.
struct PathInequality {
    bool holds = true;
    Rational slack;     // for the whole path
    Rational min_slack; // over all prefixes
};

inline PathInequality check_path_inequality(const GameGraph& g, const std::vector<Vertex>& path, const PotentialTable& t)
{
    PathInequality out{true, 0, 0};
    if (path.empty()) return out;
    Rational e = 0, gains = 0, invest = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Vertex a = path[i], b = path[i + 1];
        e += g.weight(a) - t.value;
        if (b == t.plus[a])
            invest += t.strength[a];
        else
            gains += t.strength[a];
        Rational slack = e + t.nu * gains - invest - (t.pot[path.front()] - t.pot[b]);
        if (slack < out.min_slack) out.min_slack = slack;
        out.slack = slack;
    }
    out.holds = out.min_slack >= 0;
    return out;
}

struct MeanPayoffEstimate {
    std::vector<double> per_trace;
    double min = 0, mean = 0, half_width = 0; // mean +- half_width is a 95% band
    std::optional<Rational> exact_min;
};

inline MeanPayoffEstimate estimate_meanpayoff(const std::vector<PlayTrace>& traces)
{
    MeanPayoffEstimate est;
    for (const auto& t : traces) {
        if (!t.min_tail_average) continue;
        est.per_trace.push_back(to_double(*t.min_tail_average));
        if (!est.exact_min || *t.min_tail_average < *est.exact_min) est.exact_min = *t.min_tail_average;
    }
    if (est.per_trace.empty()) return est;
    double sum = 0;
    for (double x : est.per_trace) sum += x;
    est.mean = sum / est.per_trace.size();
    est.min = to_double(*est.exact_min);
    if (est.per_trace.size() > 1) {
        double var = 0;
        for (double x : est.per_trace) var += (x - est.mean) * (x - est.mean);
        var /= est.per_trace.size() - 1;
        est.half_width = 1.96 * std::sqrt(var / est.per_trace.size());
    }
    return est;
}

inline std::string trace_csv(const GameGraph& g, const PlayTrace& t)
{
    std::ostringstream out;
    out << "round,vertex,bid1,bid2,winner,budget1,budget2,energy,walk_x\n";
    for (const auto& r : t.records) {
        out << r.round << ',' << g.id(r.vertex) << ',' << r.bid1 << ',' << r.bid2 << ',' << r.winner << ',' << r.budget1 << ','
            << r.budget2 << ',' << r.energy << ',';
        if (r.walk_x) out << *r.walk_x;
        out << '\n';
    }
    return out.str();
}

} // namespace bidgame
