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
#include <random>
#include <string>

#include "bidgame/strategy/bidder.hpp"

namespace bidgame {

/// Bids the fraction p of its current budget.
class ConstantFraction : public Bidder {
public:
    ConstantFraction(Rational p, MoveTable moves) : p_(std::move(p)), moves_(std::move(moves))
    {
        p_.canonicalize();
        if (p_ < 0 || p_ > 1) throw Error(ErrorKind::InvalidArgument, "fraction must lie in [0,1]");
    }

    std::string name() const override { return "const(" + to_string(p_) + ")"; }
    void begin(const MatchStart& m) override { quantum_ = m.quantum; }
    BidAction act(const BidContext& c) override { return {snap_down(Rational(p_ * c.own_budget), quantum_), moves_.at(c.vertex)}; }

private:
    Rational p_;
    MoveTable moves_;
    std::optional<Rational> quantum_;
};

/// Uniform bid in [0, budget]: on the grid when one is set, else with 2^-32 resolution.
class UniformRandom : public Bidder {
public:
    UniformRandom(std::uint64_t seed, MoveTable moves) : seed_(seed), moves_(std::move(moves)) {}

    std::string name() const override { return "uniform(" + std::to_string(seed_) + ")"; }

    void begin(const MatchStart& m) override
    {
        quantum_ = m.quantum;
        rng_.seed(seed_ ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(m.player)));
    }

    BidAction act(const BidContext& c) override
    {
        Rational bid;
        if (quantum_) {
            Integer steps = floor(Rational(c.own_budget / *quantum_));
            if (!steps.fits_ulong_p()) throw Error(ErrorKind::InvalidArgument, "budget too large for the bid grid");
            std::uniform_int_distribution<unsigned long> pick(0, steps.get_ui());
            bid = Rational(Integer(pick(rng_))) * *quantum_;
        } else {
            std::uniform_int_distribution<std::uint64_t> pick(0, std::uint64_t{1} << 32);
            Rational frac(Integer(static_cast<unsigned long>(pick(rng_))), Integer(1) << 32);
            frac.canonicalize();
            bid = c.own_budget * frac;
        }
        return {bid, moves_.at(c.vertex)};
    }

private:
    std::uint64_t seed_;
    MoveTable moves_;
    std::optional<Rational> quantum_;
    std::mt19937_64 rng_;
};

class AlwaysZero : public Bidder {
public:
    explicit AlwaysZero(MoveTable moves) : moves_(std::move(moves)) {}
    std::string name() const override { return "zero"; }
    BidAction act(const BidContext& c) override { return {Rational(0), moves_.at(c.vertex)}; }

private:
    MoveTable moves_;
};

} // namespace bidgame
