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
#include <limits>
#include <vector>

#include "bidgame/mdp.hpp"
#include "bidgame/random_turn.hpp"

namespace bidgame {

inline constexpr std::size_t no_choice = std::numeric_limits<std::size_t>::max();

struct StochasticSolution {
    std::vector<Rational> value; // gain per node
    std::vector<Rational> bias;
    std::vector<std::size_t> choice; // chosen successor node, no_choice for Nature
    std::size_t outer_iterations = 0;
};

/// Successor distributions of the chain induced by positional choices.
inline std::vector<Distribution> induced_chain(const StochasticGame& sg, const std::vector<std::size_t>& choice)
{
    std::vector<Distribution> rows(sg.size());
    for (std::size_t i = 0; i < sg.size(); ++i) {
        const auto& n = sg.nodes[i];
        if (n.owner == StochasticGame::Owner::Nature) {
            for (std::size_t k = 0; k < n.succ.size(); ++k)
                if (n.prob[k] != 0) rows[i].emplace_back(n.succ[k], n.prob[k]);
        } else {
            rows[i].emplace_back(choice[i], Rational(1));
        }
    }
    return rows;
}

inline ChainValues evaluate_strategies(const StochasticGame& sg, const std::vector<std::size_t>& choice)
{
    std::vector<Rational> w(sg.size());
    for (std::size_t i = 0; i < sg.size(); ++i) w[i] = sg.nodes[i].weight;
    return evaluate_chain(w, induced_chain(sg, choice));
}

namespace detail {

inline bool lex_less(const Rational& g1, const Rational& h1, const Rational& g2, const Rational& h2)
{
    return g1 < g2 || (g1 == g2 && h1 < h2);
}

/// Multichain optimality equations of a turn-based stochastic game.
inline bool satisfies_optimality(const StochasticGame& sg, const std::vector<Rational>& g, const std::vector<Rational>& h)
{
    using Owner = StochasticGame::Owner;
    for (std::size_t i = 0; i < sg.size(); ++i) {
        const auto& n = sg.nodes[i];
        if (n.owner == Owner::Nature) {
            Rational eg = 0, eh = 0;
            for (std::size_t k = 0; k < n.succ.size(); ++k) {
                eg += n.prob[k] * g[n.succ[k]];
                eh += n.prob[k] * h[n.succ[k]];
            }
            if (eg != g[i] || g[i] + h[i] != n.weight + eh) return false;
            continue;
        }
        bool is_max = n.owner == Owner::Max;
        Rational best_g = g[n.succ.front()];
        for (auto s : n.succ)
            if (is_max ? g[s] > best_g : g[s] < best_g) best_g = g[s];
        if (best_g != g[i]) return false;
        bool first = true;
        Rational best_h;
        for (auto s : n.succ) {
            if (g[s] != best_g) continue;
            if (first || (is_max ? h[s] > best_h : h[s] < best_h)) best_h = h[s];
            first = false;
        }
        if (g[i] + h[i] != n.weight + best_h) return false;
    }
    return true;
}

} // namespace detail

/// Hoffman-Karp strategy iteration: fix Min's positional strategy, solve
/// Max's MDP by policy iteration, let Min switch to a lexicographically
/// better (gain, bias) successor; stop when Min has no strict improvement.
inline StochasticSolution solve_stochastic_mp(const StochasticGame& sg, std::size_t max_outer = 10000)
{
    using Owner = StochasticGame::Owner;
    sg.check();
    const std::size_t n = sg.size();
    std::vector<std::size_t> min_choice(n, no_choice);
    for (std::size_t i = 0; i < n; ++i)
        if (sg.nodes[i].owner == Owner::Min) min_choice[i] = sg.nodes[i].succ.front();

    MdpModel mdp;
    mdp.sense = Sense::Maximize;
    mdp.states.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& node = sg.nodes[i];
        auto& st = mdp.states[i];
        st.name = node.label;
        st.weight = node.weight;
        st.controlled = node.owner == Owner::Max;
        if (node.owner == Owner::Nature) {
            MdpModel::Action a;
            for (std::size_t k = 0; k < node.succ.size(); ++k) a.next.emplace_back(node.succ[k], node.prob[k]);
            st.actions.push_back(std::move(a));
        } else if (node.owner == Owner::Max) {
            for (auto s : node.succ) st.actions.push_back({{{s, Rational(1)}}, ""});
        }
    }

    std::vector<std::size_t> warm;
    for (std::size_t outer = 1; outer <= max_outer; ++outer) {
        for (std::size_t i = 0; i < n; ++i)
            if (sg.nodes[i].owner == Owner::Min) mdp.states[i].actions = {{{{min_choice[i], Rational(1)}}, ""}};
        MdpSolution best = solve_mdp_mp(mdp, {}, warm);
        warm = best.policy;

        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (sg.nodes[i].owner != Owner::Min) continue;
            std::size_t cur = min_choice[i];
            for (auto s : sg.nodes[i].succ)
                if (detail::lex_less(best.gain[s], best.bias[s], best.gain[cur], best.bias[cur])) cur = s;
            if (cur != min_choice[i]) {
                min_choice[i] = cur;
                changed = true;
            }
        }
        if (changed) continue;

        StochasticSolution sol;
        sol.value = std::move(best.gain);
        sol.bias = std::move(best.bias);
        sol.choice = min_choice;
        for (std::size_t i = 0; i < n; ++i)
            if (sg.nodes[i].owner == Owner::Max) sol.choice[i] = sg.nodes[i].succ[best.policy[i]];
        sol.outer_iterations = outer;
        if (!detail::satisfies_optimality(sg, sol.value, sol.bias))
            throw Error(ErrorKind::NonConvergence, "strategy iteration stopped without satisfying the optimality equations");
        return sol;
    }
    throw Error(ErrorKind::NonConvergence, "strategy iteration exceeded " + std::to_string(max_outer) + " rounds");
}

/// Positional strategies of RT^r(G) mapped back to original vertices.
struct PositionalStrategyPair {
    std::vector<Vertex> max_choice;
    std::vector<Vertex> min_choice;
};

inline PositionalStrategyPair strategy_pair(const StochasticGame& sg, const StochasticSolution& sol)
{
    PositionalStrategyPair p;
    for (std::size_t v = 0; v < sg.max_copy.size(); ++v) {
        p.max_choice.push_back(sol.choice[sg.max_copy[v]] / 3);
        p.min_choice.push_back(sol.choice[sg.min_copy[v]] / 3);
    }
    return p;
}

/// MP(RT^r(G)) at every original vertex.
inline std::vector<Rational> random_turn_values(const GameGraph& g, const Rational& r)
{
    auto sg = build_random_turn(g, r);
    auto sol = solve_stochastic_mp(sg);
    std::vector<Rational> out;
    for (Vertex v = 0; v < g.size(); ++v) out.push_back(sol.value[sg.nature_copy[v]]);
    return out;
}

} // namespace bidgame
