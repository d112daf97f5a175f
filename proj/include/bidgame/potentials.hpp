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

#include <cstddef>
#include <vector>

#include "bidgame/scc.hpp"
#include "bidgame/stochastic.hpp"

namespace bidgame {

/// Potentials, strengths and witnesses of RT^r(G) for a strongly connected G,
/// with weights shifted by the value so the shifted game has value 0.
struct PotentialTable {
    Rational ratio;   // r
    Rational nu;      // r / (1 - r)
    Rational value;   // MP(RT^r(G)) of the unshifted game
    std::vector<Rational> pot;
    std::vector<Rational> strength;
    std::vector<Rational> normalized;
    std::vector<Vertex> plus, minus;
    Rational max_strength; // S
    Rational spread;       // P

    std::size_t size() const noexcept { return pot.size(); }

    /// Potential equation residual at v for the weight shifted by the value; 0 when exact.
    Rational residual(const GameGraph& g, Vertex v) const
    {
        Rational rhs = (nu * pot[plus[v]] + pot[minus[v]]) / (1 + nu) + g.weight(v) - value;
        return Rational(pot[v] - rhs);
    }
};

/// Smallest-index argmax / argmin of `val` over the successors of v.
template <typename T>
Vertex argmax_successor(const GameGraph& g, Vertex v, const std::vector<T>& val)
{
    Vertex best = g.successors(v).front();
    for (Vertex u : g.successors(v))
        if (val[u] > val[best]) best = u;
    return best;
}

template <typename T>
Vertex argmin_successor(const GameGraph& g, Vertex v, const std::vector<T>& val)
{
    Vertex best = g.successors(v).front();
    for (Vertex u : g.successors(v))
        if (val[u] < val[best]) best = u;
    return best;
}

inline PotentialTable potentials(const GameGraph& g, const Rational& r)
{
    require_strongly_connected(g);
    if (r <= 0 || r >= 1) throw Error(ErrorKind::InvalidArgument, "potentials need 0 < r < 1");
    auto sg = build_random_turn(g, r);
    auto sol = solve_stochastic_mp(sg);

    PotentialTable t;
    t.ratio = r;
    t.nu = r / (1 - r);
    t.value = sol.value[sg.nature_copy[0]];
    const std::size_t n = g.size();
    t.pot.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        if (sol.value[sg.nature_copy[v]] != t.value)
            throw Error(ErrorKind::NonConvergence, "strongly connected game with non-constant value");
        // a split step costs two moves of weight w(v), so h(v_N) = 2 Pot(v)
        t.pot[v] = sol.bias[sg.nature_copy[v]] / 2;
    }
    Rational lo = t.pot[0], hi = t.pot[0];
    for (const auto& p : t.pot) {
        lo = min(lo, p);
        hi = max(hi, p);
    }
    for (auto& p : t.pot) p -= lo;
    t.spread = hi - lo;

    t.max_strength = 0;
    for (Vertex v = 0; v < n; ++v) {
        t.plus.push_back(argmax_successor(g, v, t.pot));
        t.minus.push_back(argmin_successor(g, v, t.pot));
        t.strength.push_back((t.pot[t.plus[v]] - t.pot[t.minus[v]]) / (1 + t.nu));
        t.max_strength = max(t.max_strength, t.strength.back());
    }
    for (Vertex v = 0; v < n; ++v) {
        t.normalized.push_back(t.max_strength > 0 ? Rational(t.strength[v] / t.max_strength) : Rational(0));
        if (t.residual(g, v) != 0)
            throw Error(ErrorKind::NonConvergence, "potential equation fails at " + g.id(v));
    }
    return t;
}

} // namespace bidgame
