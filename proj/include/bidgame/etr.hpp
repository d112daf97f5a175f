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

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bidgame/scc.hpp"
#include "bidgame/threshold.hpp"

namespace bidgame {

/// Quantifier-free real-arithmetic program, rendered as SMT-LIB 2 (QF_NRA).
struct EtrProgram {
    std::vector<std::string> comments;
    std::vector<std::string> variables;
    std::vector<std::string> constraints;
    std::string query;

    std::string to_smtlib() const
    {
        std::ostringstream out;
        for (const auto& c : comments) out << "; " << c << '\n';
        out << "(set-logic QF_NRA)\n";
        for (const auto& v : variables) out << "(declare-fun " << v << " () Real)\n";
        for (const auto& c : constraints) out << "(assert " << c << ")\n";
        out << "(assert " << query << ")\n";
        out << "(check-sat)\n(exit)\n";
        return out.str();
    }
};

namespace etr {

inline std::string literal(const Rational& r)
{
    Rational a = abs(r);
    std::string s = a.get_den() == 1 ? a.get_num().get_str() : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
    return r < 0 ? "(- " + s + ")" : s;
}

inline std::string x(Vertex v) { return "x_" + std::to_string(v); }

inline std::string conj(const std::vector<std::string>& parts)
{
    if (parts.size() == 1) return parts.front();
    std::string s = "(and";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
}

inline std::string disj(const std::vector<std::string>& parts)
{
    if (parts.size() == 1) return parts.front();
    std::string s = "(or";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
}

/// hi = max and lo = min of `vals`, made definitional by bounds plus attainment.
inline void extremes(EtrProgram& p, const std::string& hi, const std::string& lo, const std::vector<std::string>& vals)
{
    std::vector<std::string> order, eq_hi, eq_lo;
    for (const auto& v : vals) {
        order.push_back("(<= " + lo + " " + v + ")");
        order.push_back("(<= " + v + " " + hi + ")");
        eq_hi.push_back("(= " + hi + " " + v + ")");
        eq_lo.push_back("(= " + lo + " " + v + ")");
    }
    p.constraints.push_back(conj(order));
    p.constraints.push_back(disj(eq_hi));
    p.constraints.push_back(disj(eq_lo));
}

/// Poorman recurrence with cleared denominator on every non-pinned vertex.
inline void interior(EtrProgram& p, const GameGraph& g, const std::vector<bool>& pinned)
{
    for (Vertex u = 0; u < g.size(); ++u) {
        if (pinned[u]) continue;
        std::string hi = "p_" + std::to_string(u), lo = "m_" + std::to_string(u);
        p.variables.push_back(hi);
        p.variables.push_back(lo);
        p.constraints.push_back("(and (<= 0 " + x(u) + ") (<= " + x(u) + " 1))");
        std::vector<std::string> vals;
        for (Vertex w : g.successors(u)) vals.push_back(x(w));
        extremes(p, hi, lo, vals);
        p.constraints.push_back("(= (* " + x(u) + " (+ (- 1 " + lo + ") " + hi + ")) " + hi + ")");
    }
}

inline EtrProgram skeleton(const GameGraph& g, Vertex v, const Rational& r, const std::string& objective)
{
    if (v >= g.size()) throw Error(ErrorKind::InvalidArgument, "query vertex out of range");
    if (r < 0 || r > 1) throw Error(ErrorKind::InvalidArgument, "query ratio must lie in [0,1]");
    EtrProgram p;
    p.comments.push_back("poorman threshold query (" + objective + "): is Th(" + g.id(v) + ") >= " + to_string(r) + "?");
    for (Vertex u = 0; u < g.size(); ++u) {
        p.comments.push_back(x(u) + " = " + g.id(u));
        p.variables.push_back(x(u));
    }
    p.query = "(>= " + x(v) + " " + literal(r) + ")";
    return p;
}

} // namespace etr

inline EtrProgram emit_parity_threshbud(const GameGraph& g, Vertex v, const Rational& r)
{
    require_parity(g);
    EtrProgram p = etr::skeleton(g, v, r, "parity");
    std::vector<bool> pinned(g.size(), false);
    for (const auto& comp : bsccs(g)) {
        double alpha = classify_bscc(g.induced(comp), BsccObjective::Parity);
        for (Vertex u : comp) {
            pinned[u] = true;
            p.constraints.push_back("(= " + etr::x(u) + " " + (alpha == 0 ? "0" : "1") + ")");
        }
    }
    etr::interior(p, g, pinned);
    return p;
}

/// Per BSCC S: rho_S in [0,1] with optimality equations of RT^rho (gain c,
/// bias h) and of the endpoint games RT^0, RT^1. rho_S = 0 when the value at
/// 0 is >= 0, rho_S = 1 when the value at 1 is < 0, otherwise c = 0.
inline EtrProgram emit_mp_threshbud(const GameGraph& g, Vertex v, const Rational& r)
{
    EtrProgram p = etr::skeleton(g, v, r, "mean-payoff");
    std::vector<bool> pinned(g.size(), false);
    auto comps = bsccs(g);
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const auto& comp = comps[k];
        const std::string K = std::to_string(k);
        const std::string rho = "rho_" + K;
        p.comments.push_back("BSCC " + K + " ratio variable " + rho);
        p.variables.push_back(rho);
        p.constraints.push_back("(and (<= 0 " + rho + ") (<= " + rho + " 1))");
        struct Block {
            std::string tag;
            int kind; // 0: RT^0, 1: RT^1, 2: RT^rho
        };
        for (const Block& b : {Block{"c0", 0}, Block{"c1", 1}, Block{"c", 2}}) {
            const std::string gain = b.tag + "_" + K;
            p.variables.push_back(gain);
            auto h = [&](Vertex u) { return "h" + b.tag.substr(1) + "_" + K + "_" + std::to_string(u); };
            for (Vertex u : comp) p.variables.push_back(h(u));
            p.constraints.push_back("(= " + h(comp.front()) + " 0)");
            for (Vertex u : comp) {
                const std::string hi = "hp" + b.tag.substr(1) + "_" + K + "_" + std::to_string(u);
                const std::string lo = "hm" + b.tag.substr(1) + "_" + K + "_" + std::to_string(u);
                std::vector<std::string> vals;
                for (Vertex w : g.successors(u)) vals.push_back(h(w));
                std::string step;
                if (b.kind == 0) {
                    p.variables.push_back(lo);
                    std::vector<std::string> bound, eq;
                    for (const auto& s : vals) {
                        bound.push_back("(<= " + lo + " " + s + ")");
                        eq.push_back("(= " + lo + " " + s + ")");
                    }
                    p.constraints.push_back(etr::conj(bound));
                    p.constraints.push_back(etr::disj(eq));
                    step = lo;
                } else if (b.kind == 1) {
                    p.variables.push_back(hi);
                    std::vector<std::string> bound, eq;
                    for (const auto& s : vals) {
                        bound.push_back("(<= " + s + " " + hi + ")");
                        eq.push_back("(= " + hi + " " + s + ")");
                    }
                    p.constraints.push_back(etr::conj(bound));
                    p.constraints.push_back(etr::disj(eq));
                    step = hi;
                } else {
                    p.variables.push_back(hi);
                    p.variables.push_back(lo);
                    etr::extremes(p, hi, lo, vals);
                    step = "(+ (* " + rho + " " + hi + ") (* (- 1 " + rho + ") " + lo + "))";
                }
                p.constraints.push_back("(= (+ " + gain + " " + h(u) + ") (+ " + etr::literal(g.weight(u)) + " " + step + "))");
            }
        }
        const std::string c0 = "c0_" + K, c1 = "c1_" + K, c = "c_" + K;
        p.constraints.push_back("(or (and (>= " + c0 + " 0) (= " + rho + " 0)) (and (< " + c0 + " 0) (< " + c1 + " 0) (= " + rho +
                                " 1)) (and (< " + c0 + " 0) (>= " + c1 + " 0) (= " + c + " 0)))");
        for (Vertex u : comp) {
            pinned[u] = true;
            p.constraints.push_back("(= " + etr::x(u) + " " + rho + ")");
        }
    }
    etr::interior(p, g, pinned);
    return p;
}

// ---------------------------------------------------------------------------
// Minimal SMT-LIB reader: enough to re-parse and audit emitted programs.

struct SExpr {
    bool atom = true;
    std::string text;
    std::vector<SExpr> items;
};

inline std::vector<SExpr> parse_sexprs(const std::string& src)
{
    std::vector<std::vector<SExpr>> stack(1);
    std::size_t i = 0, line = 1;
    auto fail = [&](const std::string& why) -> void {
        throw Error(ErrorKind::Parse, "smtlib line " + std::to_string(line) + ": " + why);
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') ++line;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ';') {
            while (i < src.size() && src[i] != '\n') ++i;
        } else if (c == '(') {
            stack.emplace_back();
            ++i;
        } else if (c == ')') {
            if (stack.size() == 1) fail("unbalanced ')'");
            SExpr e;
            e.atom = false;
            e.items = std::move(stack.back());
            stack.pop_back();
            stack.back().push_back(std::move(e));
            ++i;
        } else if (c == '|') {
            std::size_t j = src.find('|', i + 1);
            if (j == std::string::npos) fail("unterminated quoted symbol");
            stack.back().push_back({true, src.substr(i, j - i + 1), {}});
            i = j + 1;
        } else {
            std::size_t j = i;
            while (j < src.size() && !std::isspace(static_cast<unsigned char>(src[j])) && src[j] != '(' && src[j] != ')' && src[j] != ';')
                ++j;
            stack.back().push_back({true, src.substr(i, j - i), {}});
            i = j;
        }
    }
    if (stack.size() != 1) fail("unbalanced '('");
    return std::move(stack.front());
}

namespace etr {

inline bool is_number(const std::string& s)
{
    if (s.empty()) return false;
    bool dot = false;
    for (char c : s) {
        if (c == '.' && !dot)
            dot = true;
        else if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    }
    return std::isdigit(static_cast<unsigned char>(s.front())) && std::isdigit(static_cast<unsigned char>(s.back()));
}

enum class Sort { Real, Bool };

inline Sort check_term(const SExpr& e, const std::set<std::string>& vars)
{
    if (e.atom) {
        if (is_number(e.text)) return Sort::Real;
        if (e.text == "true" || e.text == "false") return Sort::Bool;
        if (vars.count(e.text)) return Sort::Real;
        throw Error(ErrorKind::Parse, "undeclared symbol " + e.text);
    }
    if (e.items.empty() || !e.items.front().atom) throw Error(ErrorKind::Parse, "malformed application");
    const std::string& op = e.items.front().text;
    const std::size_t n = e.items.size() - 1;
    std::vector<Sort> args;
    for (std::size_t k = 1; k < e.items.size(); ++k) args.push_back(check_term(e.items[k], vars));
    auto all = [&](Sort s) {
        for (auto a : args)
            if (a != s) return false;
        return true;
    };
    if (op == "+" || op == "*" || op == "/" || op == "-") {
        if (n < 1 || (op != "-" && n < 2) || !all(Sort::Real)) throw Error(ErrorKind::Parse, "bad arithmetic term (" + op + ")");
        return Sort::Real;
    }
    if (op == "=" || op == "<=" || op == ">=" || op == "<" || op == ">") {
        if (n < 2 || !all(Sort::Real)) throw Error(ErrorKind::Parse, "bad comparison (" + op + ")");
        return Sort::Bool;
    }
    if (op == "and" || op == "or") {
        if (n < 2 || !all(Sort::Bool)) throw Error(ErrorKind::Parse, "bad connective (" + op + ")");
        return Sort::Bool;
    }
    if (op == "not") {
        if (n != 1 || !all(Sort::Bool)) throw Error(ErrorKind::Parse, "bad negation");
        return Sort::Bool;
    }
    throw Error(ErrorKind::Parse, "unsupported operator " + op);
}

} // namespace etr

/// Declared variables and assertions of a parsed QF_NRA script.
struct SmtScript {
    std::string logic;
    std::vector<std::string> variables;
    std::vector<SExpr> assertions;
    bool check_sat = false;
};

/// Parses and sort-checks a script; throws ParseError-kind errors on anything
/// outside the fragment the emitters produce.
inline SmtScript read_smtlib(const std::string& text)
{
    SmtScript s;
    std::set<std::string> vars;
    for (const auto& cmd : parse_sexprs(text)) {
        if (cmd.atom || cmd.items.empty() || !cmd.items.front().atom) throw Error(ErrorKind::Parse, "top level must be commands");
        const std::string& head = cmd.items.front().text;
        if (head == "set-logic") {
            if (cmd.items.size() != 2) throw Error(ErrorKind::Parse, "set-logic arity");
            s.logic = cmd.items[1].text;
        } else if (head == "declare-fun") {
            if (cmd.items.size() != 4 || !cmd.items[1].atom || cmd.items[2].atom || !cmd.items[2].items.empty() ||
                !cmd.items[3].atom || cmd.items[3].text != "Real")
                throw Error(ErrorKind::Parse, "only nullary Real declarations are supported");
            if (!vars.insert(cmd.items[1].text).second) throw Error(ErrorKind::Parse, "redeclared " + cmd.items[1].text);
            s.variables.push_back(cmd.items[1].text);
        } else if (head == "assert") {
            if (cmd.items.size() != 2) throw Error(ErrorKind::Parse, "assert arity");
            if (etr::check_term(cmd.items[1], vars) != etr::Sort::Bool) throw Error(ErrorKind::Parse, "assertion is not Boolean");
            s.assertions.push_back(cmd.items[1]);
        } else if (head == "check-sat") {
            s.check_sat = true;
        } else if (head != "exit" && head != "set-info" && head != "set-option" && head != "get-model") {
            throw Error(ErrorKind::Parse, "unsupported command " + head);
        }
    }
    if (s.logic != "QF_NRA") throw Error(ErrorKind::Parse, "logic must be QF_NRA");
    return s;
}

namespace etr {

inline double eval_real(const SExpr& e, const std::map<std::string, double>& a)
{
    if (e.atom) {
        if (is_number(e.text)) return std::stod(e.text);
        auto it = a.find(e.text);
        if (it == a.end()) throw Error(ErrorKind::InvalidArgument, "no value for " + e.text);
        return it->second;
    }
    const std::string& op = e.items.front().text;
    double acc = eval_real(e.items[1], a);
    if (op == "-" && e.items.size() == 2) return -acc;
    for (std::size_t k = 2; k < e.items.size(); ++k) {
        double b = eval_real(e.items[k], a);
        if (op == "+") acc += b;
        else if (op == "-") acc -= b;
        else if (op == "*") acc *= b;
        else acc /= b;
    }
    return acc;
}

inline bool eval_bool(const SExpr& e, const std::map<std::string, double>& a, double tol)
{
    if (e.atom) return e.text == "true";
    const std::string& op = e.items.front().text;
    if (op == "and" || op == "or") {
        bool conj = op == "and";
        for (std::size_t k = 1; k < e.items.size(); ++k)
            if (eval_bool(e.items[k], a, tol) != conj) return !conj;
        return conj;
    }
    if (op == "not") return !eval_bool(e.items[1], a, tol);
    for (std::size_t k = 1; k + 1 < e.items.size(); ++k) {
        double l = eval_real(e.items[k], a), r = eval_real(e.items[k + 1], a);
        bool ok = op == "=" ? std::abs(l - r) <= tol
                  : op == "<=" ? l <= r + tol
                  : op == ">=" ? l + tol >= r
                  : op == "<"  ? l < r + tol
                               : l + tol > r;
        if (!ok) return false;
    }
    return true;
}

} // namespace etr

/// True iff every assertion holds under `assignment`, comparisons within tol.
inline bool satisfies(const SmtScript& s, const std::map<std::string, double>& assignment, double tol = 1e-9)
{
    for (const auto& a : s.assertions)
        if (!etr::eval_bool(a, assignment, tol)) return false;
    return true;
}

} // namespace bidgame
