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

#include "bidgame/potentials.hpp"
#include "bidgame/strategy/bidder.hpp"

namespace bidgame {

struct WalkState {
    Rational x;     // walk position, > 0
    Rational nu;    // r / (1 - r)
    Rational kappa; // initial position
};

/// nu_x = nu (1 + 2/x): the normalized budget Max must exceed at position x.
inline Rational walk_target(const Rational& nu, const Rational& x) { return Rational(nu * (1 + 2 / x)); }

/// beta_x = 2 min(1, nu) / (x (x + 1)).
inline Rational walk_scale(const Rational& nu, const Rational& x) { return Rational(2 * min(Rational(1), nu) / (x * (x + 1))); }

/// Smallest integer kappa >= 1 with nu_kappa < ratio (ratio = Max budget / Min budget).
inline Rational choose_kappa(const Rational& nu, const Rational& ratio)
{
    if (ratio <= nu)
        throw Error(ErrorKind::PreconditionViolated,
                    "budget ratio " + to_string(ratio) + " does not exceed nu = " + to_string(nu));
    Rational kappa(floor(Rational(2 * nu / (ratio - nu))) + 1);
    if (kappa < 1) kappa = 1;
    while (kappa > 1 && walk_target(nu, Rational(kappa - 1)) < ratio) kappa -= 1;
    while (!(walk_target(nu, kappa) < ratio)) kappa += 1;
    return kappa;
}

/// Bid in units of Min's current budget, and the move taken on a win.
struct WalkBid {
    Rational bid;
    Vertex move;
};

inline WalkBid max_walk_bid(const WalkState& s, const PotentialTable& t, Vertex v)
{
    if (s.x <= 0) throw Error(ErrorKind::PreconditionViolated, "walk position must be positive");
    return {Rational(t.normalized.at(v) * walk_scale(s.nu, s.x)), t.plus.at(v)};
}

inline bool walk_loss_allowed(const Rational& x, const Rational& nu, const Rational& n)
{
    return x * (x + 1) > 2 * n * min(Rational(1), nu);
}

inline WalkState update_walk(WalkState s, const Rational& n, bool won)
{
    if (won) {
        s.x += n * min(Rational(1), Rational(1 / s.nu));
    } else {
        if (!walk_loss_allowed(s.x, s.nu, n))
            throw Error(ErrorKind::PreconditionViolated, "lost a bidding at a forcing position (x = " + to_string(s.x) + ")");
        s.x -= n * min(Rational(1), s.nu);
    }
    return s;
}

/// Both step inequalities checked exactly; false when the loss precondition fails.
inline bool verify_walk_inequalities(const Rational& x, const Rational& nu, const Rational& n)
{
    if (!walk_loss_allowed(x, nu, n)) return false;
    const Rational m = min(Rational(1), nu);
    const Rational beta = Rational(2 * n * m / (x * (x + 1)));
    const Rational target = walk_target(nu, x);
    bool lose = target / (1 - beta) >= walk_target(nu, Rational(x - n * m));
    bool win = target - beta >= walk_target(nu, Rational(x + n * min(Rational(1), Rational(1 / nu))));
    return lose && win;
}

/// Energy lower bound -P - S kappa max(1, nu) guaranteed along walk plays.
inline Rational walk_energy_bound(const PotentialTable& t, const Rational& kappa)
{
    return Rational(-t.spread - t.max_strength * kappa * max(Rational(1), t.nu));
}

/// Max's mean-payoff strategy: bid nSt(v) beta_x of Min's budget, move to v+.
/// At a forcing position (bid >= Min's whole budget) Max adds half of his
/// surplus over nu_x, so he wins even when ties go to Min.
class WalkBidder : public Bidder {
public:
    explicit WalkBidder(PotentialTable table) : table_(std::move(table)) {}

    std::string name() const override { return "walk"; }

    void begin(const MatchStart& m) override
    {
        quantum_ = m.quantum;
        Rational ratio = m.opponent_budget == 0 ? Rational(0) : Rational(m.own_budget / m.opponent_budget);
        Rational kappa = m.opponent_budget == 0 ? Rational(1) : choose_kappa(table_.nu, ratio);
        state_ = {kappa, table_.nu, kappa};
        violation_.reset();
        capped_ = 0;
    }

    BidAction act(const BidContext& c) override
    {
        WalkBid w = max_walk_bid(state_, table_, c.vertex);
        const Rational& opp = c.opponent_budget;
        Rational bid = snap_up(Rational(w.bid * opp), quantum_);
        if (w.bid >= 1 && bid <= opp) {
            if (quantum_)
                bid = opp + *quantum_;
            else
                bid = w.bid * opp + (c.own_budget - walk_target(state_.nu, state_.x) * opp) / 2;
        }
        if (bid > c.own_budget) {
            bid = c.own_budget;
            ++capped_;
        }
        current_n_ = table_.normalized.at(c.vertex);
        return {bid, w.move};
    }

    void observe(const RoundOutcome& o) override
    {
        violation_.reset();
        if (!o.won && !walk_loss_allowed(state_.x, state_.nu, current_n_)) {
            violation_ = "walk lost at a forcing position, x = " + to_string(state_.x);
            state_.x -= current_n_ * min(Rational(1), state_.nu);
        } else {
            state_ = update_walk(state_, current_n_, o.won);
        }
        if (state_.x <= 0) {
            violation_ = "walk position left the positive axis: x = " + to_string(state_.x);
        } else if (o.opponent_budget == 0 ? !(o.own_budget > 0)
                                          : !(o.own_budget > walk_target(state_.nu, state_.x) * o.opponent_budget)) {
            violation_ = "budget ratio not above nu_x at x = " + to_string(state_.x);
        }
        if (capped_ && !violation_) violation_ = "walk bid exceeded the available budget";
        capped_ = 0;
    }

    std::optional<std::string> audit() const override { return violation_; }
    std::optional<Rational> walk_position() const override { return state_.x; }

    const WalkState& state() const noexcept { return state_; }
    const PotentialTable& table() const noexcept { return table_; }
    Rational energy_bound() const { return walk_energy_bound(table_, state_.kappa); }

private:
    PotentialTable table_;
    WalkState state_{};
    std::optional<Rational> quantum_;
    Rational current_n_;
    std::optional<std::string> violation_;
    std::size_t capped_ = 0;
};

} // namespace bidgame
