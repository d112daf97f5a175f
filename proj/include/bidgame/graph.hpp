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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bidgame/error.hpp"
#include "bidgame/rational.hpp"

namespace bidgame {

using Vertex = std::size_t;

/// Unvalidated graph as read from a file or assembled by a builder.
struct GameDescription {
    struct VertexDecl {
        std::string id;
        Rational weight;
        std::optional<int> parity;
    };
    std::vector<VertexDecl> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
};

struct Violation {
    ErrorKind kind;
    std::string where;
    std::string detail;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> report)
        : Error(report.size() == 1 ? report.front().kind : ErrorKind::Validation, summarize(report)),
          report_(std::move(report))
    {
    }

    const std::vector<Violation>& report() const noexcept { return report_; }

private:
    static std::string summarize(const std::vector<Violation>& report)
    {
        std::string s;
        for (const auto& v : report) {
            if (!s.empty()) s += "; ";
            s += std::string(to_string(v.kind)) + " at " + v.where;
            if (!v.detail.empty()) s += " (" + v.detail + ")";
        }
        return s;
    }

    std::vector<Violation> report_;
};

/// Lists every invariant violation; empty means the description is a valid arena.
inline std::vector<Violation> validate(const GameDescription& desc, bool require_parity = false)
{
    std::vector<Violation> out;
    std::map<std::string, std::size_t> outdeg;
    for (const auto& v : desc.vertices) {
        if (v.id.empty()) out.push_back({ErrorKind::Validation, "vertex ''", "empty id"});
        if (!outdeg.emplace(v.id, 0).second)
            out.push_back({ErrorKind::Validation, "vertex " + v.id, "duplicate id"});
        if (v.parity && *v.parity < 1)
            out.push_back({ErrorKind::Validation, "vertex " + v.id, "parity index must be positive"});
        if (require_parity && !v.parity) out.push_back({ErrorKind::MissingParity, "vertex " + v.id, ""});
    }
    if (desc.vertices.empty()) out.push_back({ErrorKind::Validation, "graph", "no vertices"});
    std::vector<std::pair<std::string, std::string>> seen;
    for (const auto& [from, to] : desc.edges) {
        std::string e = from + " -> " + to;
        bool ok = true;
        if (!outdeg.count(from)) {
            out.push_back({ErrorKind::DanglingEdge, "edge " + e, "undeclared source " + from});
            ok = false;
        }
        if (!outdeg.count(to)) {
            out.push_back({ErrorKind::DanglingEdge, "edge " + e, "undeclared target " + to});
            ok = false;
        }
        if (ok) ++outdeg[from];
        seen.emplace_back(from, to);
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
        if (seen[i] == seen[i - 1])
            out.push_back({ErrorKind::Validation, "edge " + seen[i].first + " -> " + seen[i].second, "duplicate edge"});
    for (const auto& [id, d] : outdeg)
        if (d == 0) out.push_back({ErrorKind::SinkVertex, "vertex " + id, "out-degree 0"});
    return out;
}

/// Immutable arena. Vertices are indexed by their position in the
/// lexicographic order of ids, so "smallest index" means "smallest id".
class GameGraph {
public:
    GameGraph() = default;

    explicit GameGraph(const GameDescription& desc)
    {
        auto report = validate(desc);
        if (!report.empty()) throw ValidationError(std::move(report));
        std::vector<const GameDescription::VertexDecl*> order;
        for (const auto& v : desc.vertices) order.push_back(&v);
        std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id < b->id; });
        bool all_parity = std::all_of(order.begin(), order.end(), [](auto* v) { return v->parity.has_value(); });
        for (auto* v : order) {
            index_.emplace(v->id, ids_.size());
            ids_.push_back(v->id);
            weights_.push_back(v->weight);
            if (all_parity) parity_.push_back(*v->parity);
        }
        succ_.resize(ids_.size());
        for (const auto& [from, to] : desc.edges) succ_[index_.at(from)].push_back(index_.at(to));
        for (auto& s : succ_) std::sort(s.begin(), s.end());
    }

    std::size_t size() const noexcept { return ids_.size(); }
    const std::string& id(Vertex v) const { return ids_[v]; }
    const Rational& weight(Vertex v) const { return weights_[v]; }
    const std::vector<Vertex>& successors(Vertex v) const { return succ_[v]; }
    bool has_parity() const noexcept { return !parity_.empty() && parity_.size() == ids_.size(); }
    int parity(Vertex v) const { return parity_.at(v); }

    std::optional<Vertex> find(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    Vertex at(const std::string& id) const
    {
        auto v = find(id);
        if (!v) throw Error(ErrorKind::InvalidArgument, "unknown vertex " + id);
        return *v;
    }

    bool has_edge(Vertex from, Vertex to) const
    {
        return std::binary_search(succ_[from].begin(), succ_[from].end(), to);
    }

    std::size_t edge_count() const
    {
        std::size_t n = 0;
        for (const auto& s : succ_) n += s.size();
        return n;
    }

    /// Canonical description: vertices and edges sorted lexicographically.
    GameDescription describe() const
    {
        GameDescription d;
        for (Vertex v = 0; v < size(); ++v) {
            std::optional<int> p;
            if (has_parity()) p = parity_[v];
            d.vertices.push_back({ids_[v], weights_[v], p});
        }
        for (Vertex v = 0; v < size(); ++v)
            for (Vertex u : succ_[v]) d.edges.emplace_back(ids_[v], ids_[u]);
        return d;
    }

    /// Same arena with every weight replaced by f(v, w(v)).
    template <typename F>
    GameGraph map_weights(F&& f) const
    {
        GameGraph g = *this;
        for (Vertex v = 0; v < size(); ++v) g.weights_[v] = f(v, weights_[v]);
        return g;
    }

    /// Subgraph induced by `keep` (sorted indices); edges leaving it are dropped.
    GameGraph induced(const std::vector<Vertex>& keep) const
    {
        GameDescription d;
        std::vector<bool> in(size(), false);
        for (Vertex v : keep) in[v] = true;
        for (Vertex v : keep) {
            std::optional<int> p;
            if (has_parity()) p = parity_[v];
            d.vertices.push_back({ids_[v], weights_[v], p});
            for (Vertex u : succ_[v])
                if (in[u]) d.edges.emplace_back(ids_[v], ids_[u]);
        }
        return GameGraph(d);
    }

    friend bool operator==(const GameGraph& a, const GameGraph& b)
    {
        return a.ids_ == b.ids_ && a.weights_ == b.weights_ && a.succ_ == b.succ_ && a.parity_ == b.parity_;
    }

private:
    std::vector<std::string> ids_;
    std::map<std::string, Vertex> index_;
    std::vector<Rational> weights_;
    std::vector<std::vector<Vertex>> succ_;
    std::vector<int> parity_;
};

inline void require_parity(const GameGraph& g)
{
    if (!g.has_parity()) throw Error(ErrorKind::MissingParity, "parity objective needs a parity index on every vertex");
}

struct Objective {
    enum class Kind { Reachability, DoubleReachability, Parity, MeanPayoff, Energy };
    Kind kind = Kind::MeanPayoff;
    std::optional<Vertex> target1, target2;
    Rational initial_energy = 0;

    static Objective reachability(Vertex t) { return {Kind::Reachability, t, std::nullopt, 0}; }
    static Objective double_reachability(Vertex t1, Vertex t2) { return {Kind::DoubleReachability, t1, t2, 0}; }
    static Objective parity() { return {Kind::Parity, std::nullopt, std::nullopt, 0}; }
    static Objective mean_payoff() { return {Kind::MeanPayoff, std::nullopt, std::nullopt, 0}; }
    static Objective energy(Rational k) { return {Kind::Energy, std::nullopt, std::nullopt, std::move(k)}; }

    void check(const GameGraph& g) const
    {
        for (auto t : {target1, target2})
            if (t && *t >= g.size()) throw Error(ErrorKind::InvalidArgument, "objective target is not a vertex");
        if (kind == Kind::Parity) require_parity(g);
    }
};

/// Initial budget ratio r = B1/(B1+B2) with r = nu/(nu+1).
class BudgetRatio {
public:
    explicit BudgetRatio(Rational r) : value_(std::move(r))
    {
        if (value_ < 0 || value_ > 1) throw Error(ErrorKind::InvalidArgument, "ratio must lie in [0,1]");
    }

    static BudgetRatio from_budgets(const Rational& b1, const Rational& b2)
    {
        if (b1 < 0 || b2 < 0 || b1 + b2 <= 0) throw Error(ErrorKind::InvalidArgument, "budgets must be >= 0 with positive total");
        return BudgetRatio(Rational(b1 / (b1 + b2)));
    }

    const Rational& value() const noexcept { return value_; }

    std::optional<Rational> nu() const
    {
        if (value_ == 1) return std::nullopt;
        return Rational(value_ / (1 - value_));
    }

private:
    Rational value_;
};

} // namespace bidgame
