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

#include <algorithm>
#include <cstddef>
#include <deque>
#include <vector>

#include "bidgame/graph.hpp"

namespace bidgame {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Strongly connected components (iterative Tarjan). Components come out in
/// reverse topological order; each is sorted.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj)
{
    const std::size_t n = adj.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    std::vector<Frame> call;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < adj[f.v].size()) {
                std::size_t u = adj[f.v][f.next++];
                if (index[u] == unvisited) {
                    index[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = true;
                    call.push_back({u, 0});
                } else if (on_stack[u]) {
                    low[f.v] = std::min(low[f.v], index[u]);
                }
                continue;
            }
            std::size_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t u;
                do {
                    u = stack.back();
                    stack.pop_back();
                    on_stack[u] = false;
                    comp.push_back(u);
                } while (u != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }
    return comps;
}

/// Components with no edge leaving them, sorted by their smallest member.
inline std::vector<std::vector<std::size_t>> bottom_components(const Adjacency& adj)
{
    auto comps = strongly_connected_components(adj);
    std::vector<std::size_t> comp_of(adj.size());
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (auto v : comps[c]) comp_of[v] = c;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        bool closed = true;
        for (auto v : comps[c])
            for (auto u : adj[v])
                if (comp_of[u] != c) closed = false;
        if (closed) out.push_back(comps[c]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Adjacency adjacency(const GameGraph& g)
{
    Adjacency adj(g.size());
    for (Vertex v = 0; v < g.size(); ++v) adj[v] = g.successors(v);
    return adj;
}

inline Adjacency reverse(const Adjacency& adj)
{
    Adjacency rev(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (auto u : adj[v]) rev[u].push_back(v);
    return rev;
}

inline std::vector<std::vector<Vertex>> bsccs(const GameGraph& g) { return bottom_components(adjacency(g)); }

inline bool is_strongly_connected(const GameGraph& g)
{
    return g.size() > 0 && strongly_connected_components(adjacency(g)).size() == 1;
}

inline void require_strongly_connected(const GameGraph& g)
{
    if (!is_strongly_connected(g)) throw Error(ErrorKind::NotStronglyConnected, "game graph is not strongly connected");
}

/// Marks every vertex reachable from `sources` along `adj`.
inline std::vector<bool> reachable_from(const Adjacency& adj, const std::vector<std::size_t>& sources)
{
    std::vector<bool> seen(adj.size(), false);
    std::deque<std::size_t> queue;
    for (auto s : sources)
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto u : adj[v])
            if (!seen[u]) {
                seen[u] = true;
                queue.push_back(u);
            }
    }
    return seen;
}

/// BFS distance (edge count) from every vertex to the set `targets`; npos if none.
inline std::vector<std::size_t> distance_to(const GameGraph& g, const std::vector<Vertex>& targets)
{
    constexpr std::size_t inf = static_cast<std::size_t>(-1);
    auto rev = reverse(adjacency(g));
    std::vector<std::size_t> dist(g.size(), inf);
    std::deque<Vertex> queue;
    for (auto t : targets)
        if (dist[t] == inf) {
            dist[t] = 0;
            queue.push_back(t);
        }
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto u : rev[v])
            if (dist[u] == inf) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

} // namespace bidgame
