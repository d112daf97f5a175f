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

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bidgame/auction.hpp"
#include "bidgame/graph.hpp"
#include "bidgame/potentials.hpp"
#include "bidgame/threshold.hpp"

namespace bidgame {

using json = nlohmann::ordered_json;

class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, std::string field, const std::string& what)
        : Error(ErrorKind::Parse, source + (line ? ":" + std::to_string(line) : "") + (field.empty() ? "" : " [" + field + "]") +
                                      ": " + what),
          line_(line), field_(std::move(field))
    {
    }

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source, line_of(text, e.byte), "", e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "", "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Rational rational_field(const json& j, const std::string& source, const std::string& field)
{
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.dump());
    } catch (const Error& e) {
        throw ParseError(source, 0, field, e.what());
    }
    throw ParseError(source, 0, field, "expected a rational string");
}

inline const json& member(const json& j, const char* key, const std::string& source, const std::string& field)
{
    if (!j.is_object()) throw ParseError(source, 0, field, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(source, 0, field.empty() ? key : field + "." + key, "missing field");
    return *it;
}

} // namespace detail

inline GameDescription parse_game_description(const json& j, const std::string& source = "<json>")
{
    GameDescription d;
    const json& verts = detail::member(j, "vertices", source, "");
    const json& edges = detail::member(j, "edges", source, "");
    if (!verts.is_array()) throw ParseError(source, 0, "vertices", "expected an array");
    if (!edges.is_array()) throw ParseError(source, 0, "edges", "expected an array");
    for (std::size_t i = 0; i < verts.size(); ++i) {
        std::string field = "vertices[" + std::to_string(i) + "]";
        const json& id = detail::member(verts[i], "id", source, field);
        if (!id.is_string()) throw ParseError(source, 0, field + ".id", "expected a string");
        GameDescription::VertexDecl decl{id.get<std::string>(), 0, std::nullopt};
        decl.weight = detail::rational_field(detail::member(verts[i], "weight", source, field), source, field + ".weight");
        if (auto it = verts[i].find("parity"); it != verts[i].end()) {
            if (!it->is_number_integer()) throw ParseError(source, 0, field + ".parity", "expected an integer");
            decl.parity = it->get<int>();
        }
        d.vertices.push_back(std::move(decl));
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const json& e = edges[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError(source, 0, "edges[" + std::to_string(i) + "]", "expected [from, to]");
        d.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return d;
}

inline GameGraph parse_game(const std::string& text, const std::string& source = "<string>")
{
    return GameGraph(parse_game_description(detail::parse_json_text(text, source), source));
}

inline GameGraph load_game(const std::string& path) { return parse_game(detail::read_file(path), path); }

inline json game_to_json(const GameGraph& g)
{
    json verts = json::array(), edges = json::array();
    for (Vertex v = 0; v < g.size(); ++v) {
        json o = {{"id", g.id(v)}, {"weight", to_string(g.weight(v))}};
        if (g.has_parity()) o["parity"] = g.parity(v);
        verts.push_back(std::move(o));
        for (Vertex u : g.successors(v)) edges.push_back({g.id(v), g.id(u)});
    }
    return {{"vertices", std::move(verts)}, {"edges", std::move(edges)}};
}

inline std::string dump_game(const GameGraph& g) { return game_to_json(g).dump(2) + "\n"; }

inline void save_game(const GameGraph& g, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << dump_game(g);
}

inline AuctionSpec parse_auction_spec(const std::string& text, const std::string& source = "<string>")
{
    json j = detail::parse_json_text(text, source);
    AuctionSpec spec;
    if (auto it = j.find("slots"); it != j.end()) {
        if (!it->is_number_unsigned()) throw ParseError(source, 0, "slots", "expected a positive integer");
        spec.slots = it->get<std::size_t>();
    }
    const json& reward = detail::member(j, "reward", source, "");
    if (!reward.is_object()) throw ParseError(source, 0, "reward", "expected an object");
    for (auto it = reward.begin(); it != reward.end(); ++it)
        spec.reward[it.key()] = detail::rational_field(it.value(), source, "reward." + it.key());
    return spec;
}

inline AuctionSpec load_auction_spec(const std::string& path) { return parse_auction_spec(detail::read_file(path), path); }

/// Shortest decimal that round-trips the double.
inline std::string format_double(double d)
{
    std::ostringstream ss;
    ss << std::setprecision(std::numeric_limits<double>::max_digits10) << d;
    return ss.str();
}

inline json thresholds_to_json(const GameGraph& g, const ThresholdMap& m, double tol)
{
    json th = json::object(), wit = json::object();
    for (Vertex v = 0; v < g.size(); ++v) {
        th[g.id(v)] = m.th[v];
        wit[g.id(v)] = {{"plus", g.id(m.plus[v])}, {"minus", g.id(m.minus[v])}, {"boundary", static_cast<bool>(m.boundary[v])}};
    }
    return {{"mode", m.mode == BiddingMode::Poorman ? "poorman" : "richman"},
            {"tolerance", tol},
            {"residual", m.residual},
            {"sweeps", m.sweeps},
            {"thresholds", std::move(th)},
            {"witnesses", std::move(wit)}};
}

inline json potentials_to_json(const GameGraph& g, const PotentialTable& t)
{
    json pot = json::object(), st = json::object(), nst = json::object(), wit = json::object();
    for (Vertex v = 0; v < g.size(); ++v) {
        pot[g.id(v)] = to_string(t.pot[v]);
        st[g.id(v)] = to_string(t.strength[v]);
        nst[g.id(v)] = to_string(t.normalized[v]);
        wit[g.id(v)] = {{"plus", g.id(t.plus[v])}, {"minus", g.id(t.minus[v])}};
    }
    return {{"ratio", to_string(t.ratio)},
            {"nu", to_string(t.nu)},
            {"value", to_string(t.value)},
            {"max_strength", to_string(t.max_strength)},
            {"spread", to_string(t.spread)},
            {"pot", std::move(pot)},
            {"strength", std::move(st)},
            {"normalized", std::move(nst)},
            {"witnesses", std::move(wit)}};
}

} // namespace bidgame
