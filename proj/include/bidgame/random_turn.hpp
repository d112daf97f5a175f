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
#include <vector>

#include "bidgame/graph.hpp"

namespace bidgame {

/// Turn-based stochastic game with Max, Min and Nature nodes.
struct StochasticGame {
    enum class Owner { Max, Min, Nature };

    struct Node {
        Owner owner;
        Rational weight;
        std::vector<std::size_t> succ;
        std::vector<Rational> prob; // Nature only, parallel to succ
        std::string label;
    };

    std::vector<Node> nodes;
    // Split copies of each original vertex (random-turn games only).
    std::vector<std::size_t> max_copy, min_copy, nature_copy;

    std::size_t size() const noexcept { return nodes.size(); }

    /// Throws on structural problems (bad targets, nature rows not summing to 1).
    void check() const
    {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Node& n = nodes[i];
            if (n.succ.empty()) throw Error(ErrorKind::SinkVertex, "stochastic node " + n.label);
            for (auto s : n.succ)
                if (s >= nodes.size()) throw Error(ErrorKind::DanglingEdge, "stochastic node " + n.label);
            if (n.owner == Owner::Nature) {
                if (n.prob.size() != n.succ.size()) throw Error(ErrorKind::Validation, "nature row size " + n.label);
                Rational sum = 0;
                for (const auto& p : n.prob) {
                    if (p < 0) throw Error(ErrorKind::Validation, "negative probability at " + n.label);
                    sum += p;
                }
                if (sum != 1) throw Error(ErrorKind::Validation, "nature row does not sum to 1 at " + n.label);
            }
        }
    }
};

/// RT^r(G): node 3v is v_N, 3v+1 is v_Max, 3v+2 is v_Min.
inline StochasticGame build_random_turn(const GameGraph& g, const Rational& r)
{
    if (r < 0 || r > 1) throw Error(ErrorKind::InvalidArgument, "ratio must lie in [0,1]");
    StochasticGame sg;
    const std::size_t n = g.size();
    sg.nodes.resize(3 * n);
    sg.max_copy.resize(n);
    sg.min_copy.resize(n);
    sg.nature_copy.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        std::size_t vn = 3 * v, vmax = 3 * v + 1, vmin = 3 * v + 2;
        sg.nature_copy[v] = vn;
        sg.max_copy[v] = vmax;
        sg.min_copy[v] = vmin;
        sg.nodes[vn] = {StochasticGame::Owner::Nature, g.weight(v), {vmax, vmin}, {r, Rational(1 - r)}, g.id(v) + "_N"};
        std::vector<std::size_t> succ;
        for (Vertex u : g.successors(v)) succ.push_back(3 * u);
        sg.nodes[vmax] = {StochasticGame::Owner::Max, g.weight(v), succ, {}, g.id(v) + "_Max"};
        sg.nodes[vmin] = {StochasticGame::Owner::Min, g.weight(v), succ, {}, g.id(v) + "_Min"};
    }
    return sg;
}

} // namespace bidgame
