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
#include <string>
#include <utility>
#include <vector>

#include "bidgame/graph.hpp"
#include "bidgame/linalg.hpp"
#include "bidgame/scc.hpp"

namespace bidgame {

/// One row of a Markov chain: (target, probability) pairs with positive mass.
using Distribution = std::vector<std::pair<std::size_t, Rational>>;

struct ChainValues {
    std::vector<Rational> gain;
    std::vector<Rational> bias;
};

/// Multichain average-reward evaluation of a finite Markov chain.
/// Bias is pinned to 0 at the smallest state of every recurrent class.
inline ChainValues evaluate_chain(const std::vector<Rational>& weight, const std::vector<Distribution>& rows)
{
    const std::size_t n = rows.size();
    Adjacency adj(n);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& [t, p] : rows[s]) adj[s].push_back(t);
    auto classes = bottom_components(adj);

    ChainValues out{std::vector<Rational>(n), std::vector<Rational>(n)};
    std::vector<bool> recurrent(n, false);
    for (const auto& cls : classes) {
        const std::size_t m = cls.size();
        std::vector<std::size_t> pos(n, 0);
        for (std::size_t i = 0; i < m; ++i) pos[cls[i]] = i;
        // unknown 0 is the class gain, unknown i>0 is h(cls[i]); h(cls[0]) = 0
        Matrix a(m, std::vector<Rational>(m));
        std::vector<Rational> b(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t s = cls[i];
            a[i][0] += 1;
            if (i > 0) a[i][i] += 1;
            for (const auto& [t, p] : rows[s])
                if (pos[t] > 0) a[i][pos[t]] -= p;
            b[i] = weight[s];
        }
        auto x = solve_linear(std::move(a), std::move(b));
        if (!x) throw Error(ErrorKind::NonConvergence, "singular recurrent-class system");
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t s = cls[i];
            recurrent[s] = true;
            out.gain[s] = (*x)[0];
            out.bias[s] = i == 0 ? Rational(0) : (*x)[i];
        }
    }

    std::vector<std::size_t> transient, tpos(n, 0);
    for (std::size_t s = 0; s < n; ++s)
        if (!recurrent[s]) {
            tpos[s] = transient.size();
            transient.push_back(s);
        }
    if (transient.empty()) return out;
    const std::size_t m = transient.size();
    Matrix base(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
        base[i][i] += 1;
        for (const auto& [t, p] : rows[transient[i]])
            if (!recurrent[t]) base[i][tpos[t]] -= p;
    }
    std::vector<Rational> bg(m);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [t, p] : rows[transient[i]])
            if (recurrent[t]) bg[i] += p * out.gain[t];
    auto g = solve_linear(base, std::move(bg));
    if (!g) throw Error(ErrorKind::NonConvergence, "singular transient gain system");
    for (std::size_t i = 0; i < m; ++i) out.gain[transient[i]] = (*g)[i];
    std::vector<Rational> bh(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t s = transient[i];
        bh[i] = weight[s] - out.gain[s];
        for (const auto& [t, p] : rows[s])
            if (recurrent[t]) bh[i] += p * out.bias[t];
    }
    auto h = solve_linear(std::move(base), std::move(bh));
    if (!h) throw Error(ErrorKind::NonConvergence, "singular transient bias system");
    for (std::size_t i = 0; i < m; ++i) out.bias[transient[i]] = (*h)[i];
    return out;
}

enum class Sense { Maximize, Minimize };

struct MdpModel {
    struct Action {
        Distribution next;
        std::string label;
    };
    struct State {
        std::string name;
        Rational weight;
        bool controlled = false;
        std::vector<Action> actions; // nature states carry exactly one
    };

    std::vector<State> states;
    Sense sense = Sense::Maximize;

    void check() const
    {
        for (const auto& s : states) {
            if (s.actions.empty()) throw Error(ErrorKind::Validation, "MDP state without actions: " + s.name);
            if (!s.controlled && s.actions.size() != 1)
                throw Error(ErrorKind::Validation, "nature state with several actions: " + s.name);
            for (const auto& a : s.actions) {
                Rational sum = 0;
                for (const auto& [t, p] : a.next) {
                    if (t >= states.size()) throw Error(ErrorKind::DanglingEdge, "MDP transition from " + s.name);
                    if (p < 0) throw Error(ErrorKind::Validation, "negative probability at " + s.name);
                    sum += p;
                }
                if (sum != 1) throw Error(ErrorKind::Validation, "probabilities do not sum to 1 at " + s.name);
            }
        }
    }
};

struct MdpSolution {
    std::vector<Rational> gain;
    std::vector<Rational> bias;
    std::vector<std::size_t> policy; // chosen action per state
    std::size_t iterations = 0;
};

struct PolicyIterationOptions {
    std::size_t max_iterations = 10000;
};

namespace detail {

inline Distribution positive_part(const Distribution& d)
{
    Distribution out;
    for (const auto& [t, p] : d)
        if (p != 0) out.emplace_back(t, p);
    return out;
}

inline Rational expect(const Distribution& d, const std::vector<Rational>& v)
{
    Rational s = 0;
    for (const auto& [t, p] : d) s += p * v[t];
    return s;
}

} // namespace detail

/// Multichain average-reward policy iteration (gain improvement first, then
/// bias), exact. `initial` warm-starts the policy when non-empty.
inline MdpSolution solve_mdp_mp(const MdpModel& mdp, const PolicyIterationOptions& opt = {},
                                std::vector<std::size_t> initial = {})
{
    mdp.check();
    const std::size_t n = mdp.states.size();
    const bool minimize = mdp.sense == Sense::Minimize;
    std::vector<Rational> weight(n);
    std::vector<std::vector<Distribution>> acts(n);
    for (std::size_t s = 0; s < n; ++s) {
        weight[s] = minimize ? Rational(-mdp.states[s].weight) : mdp.states[s].weight;
        for (const auto& a : mdp.states[s].actions) acts[s].push_back(detail::positive_part(a.next));
    }
    std::vector<std::size_t> policy = initial.size() == n ? std::move(initial) : std::vector<std::size_t>(n, 0);

    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        std::vector<Distribution> rows(n);
        for (std::size_t s = 0; s < n; ++s) rows[s] = acts[s][policy[s]];
        ChainValues val = evaluate_chain(weight, rows);

        bool changed = false;
        std::vector<Rational> pg(n);
        for (std::size_t s = 0; s < n; ++s) {
            Rational cur = detail::expect(acts[s][policy[s]], val.gain);
            pg[s] = cur;
            std::size_t best = policy[s];
            for (std::size_t a = 0; a < acts[s].size(); ++a) {
                Rational q = detail::expect(acts[s][a], val.gain);
                if (q > pg[s]) {
                    pg[s] = q;
                    best = a;
                }
            }
            if (best != policy[s]) {
                policy[s] = best;
                changed = true;
            }
        }
        if (!changed) {
            for (std::size_t s = 0; s < n; ++s) {
                Rational best_q = detail::expect(acts[s][policy[s]], val.bias);
                std::size_t best = policy[s];
                for (std::size_t a = 0; a < acts[s].size(); ++a) {
                    if (detail::expect(acts[s][a], val.gain) != pg[s]) continue;
                    Rational q = detail::expect(acts[s][a], val.bias);
                    if (q > best_q) {
                        best_q = q;
                        best = a;
                    }
                }
                if (best != policy[s]) {
                    policy[s] = best;
                    changed = true;
                }
            }
        }
        if (!changed) {
            MdpSolution sol{std::move(val.gain), std::move(val.bias), std::move(policy), it};
            if (minimize) {
                for (auto& g : sol.gain) g = -g;
                for (auto& h : sol.bias) h = -h;
            }
            return sol;
        }
    }
    throw Error(ErrorKind::NonConvergence, "policy iteration exceeded " + std::to_string(opt.max_iterations) + " iterations");
}

/// Out-degree-2 reduction: controlled v picks nature v_1 (toward u1 with
/// probability r) or v_2 (toward u1 with probability 1-r).
/// State 3v is v, 3v+1 is v_1, 3v+2 is v_2.
inline MdpModel build_outdeg2_mdp(const GameGraph& g, const Rational& r)
{
    if (r < 0 || r > 1) throw Error(ErrorKind::InvalidArgument, "ratio must lie in [0,1]");
    MdpModel mdp;
    mdp.sense = r >= Rational(1, 2) ? Sense::Maximize : Sense::Minimize;
    mdp.states.resize(3 * g.size());
    for (Vertex v = 0; v < g.size(); ++v) {
        const auto& s = g.successors(v);
        if (s.size() != 2) throw Error(ErrorKind::OutDegreeNotTwo, "vertex " + g.id(v));
        const std::size_t u1 = 3 * s[0], u2 = 3 * s[1];
        const Rational q = 1 - r;
        mdp.states[3 * v] = {g.id(v), g.weight(v), true, {{{{3 * v + 1, 1}}, g.id(v) + "_1"}, {{{3 * v + 2, 1}}, g.id(v) + "_2"}}};
        mdp.states[3 * v + 1] = {g.id(v) + "_1", g.weight(v), false, {{{{u1, r}, {u2, q}}, "nature"}}};
        mdp.states[3 * v + 2] = {g.id(v) + "_2", g.weight(v), false, {{{{u1, q}, {u2, r}}, "nature"}}};
    }
    return mdp;
}

} // namespace bidgame
