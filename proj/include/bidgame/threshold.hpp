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

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bidgame/potentials.hpp"
#include "bidgame/scc.hpp"

namespace bidgame {

enum class BiddingMode { Poorman, Richman };

inline constexpr double default_tolerance = 1e-10;

/// Default tolerance, overridable through GAME_SOLVER_TOL.
inline double solver_tolerance()
{
    if (const char* env = std::getenv("GAME_SOLVER_TOL")) {
        char* end = nullptr;
        double t = std::strtod(env, &end);
        if (end != env && *end == '\0' && t > 0 && std::isfinite(t)) return t;
        throw Error(ErrorKind::InvalidArgument, std::string("GAME_SOLVER_TOL is not a positive number: ") + env);
    }
    return default_tolerance;
}

using BoundaryMap = std::map<Vertex, double>;

struct ThresholdMap {
    std::vector<double> th;
    std::vector<Vertex> plus, minus;
    std::vector<bool> boundary;
    BiddingMode mode = BiddingMode::Poorman;
    double residual = 0; // max interior residual
    std::size_t sweeps = 0;

    std::size_t size() const noexcept { return th.size(); }
};

struct FixedPointOptions {
    double tol = default_tolerance;
    std::size_t max_sweeps = 1000000;
    BiddingMode mode = BiddingMode::Poorman;
};

namespace detail {

/// Poorman update f+/(1 + f+ - f-), written as 1/(1 + (1-f-)/f+) so that it
/// stays monotone under rounding; 0 when f+ = 0.
inline double poorman_update(double fp, double fm)
{
    if (fp <= 0) return 0;
    return 1.0 / (1.0 + (1.0 - fm) / fp);
}

inline double update(BiddingMode mode, double fp, double fm)
{
    return mode == BiddingMode::Poorman ? poorman_update(fp, fm) : 0.5 * (fp + fm);
}

} // namespace detail

inline std::string short_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

class IterationCapError : public Error {
public:
    IterationCapError(double best_residual, std::size_t sweeps)
        : Error(ErrorKind::IterationCap, "no convergence after " + std::to_string(sweeps) + " sweeps, best sweep change " +
                                             short_double(best_residual)),
          best_residual_(best_residual)
    {
    }

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Interior residual of th against its recurrence (witnesses recomputed).
inline double fixed_point_residual(const GameGraph& g, const ThresholdMap& m)
{
    double worst = 0;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (m.boundary[v]) continue;
        double fp = m.th[argmax_successor(g, v, m.th)], fm = m.th[argmin_successor(g, v, m.th)];
        worst = std::max(worst, std::abs(m.th[v] - detail::update(m.mode, fp, fm)));
    }
    return worst;
}

/// Least fixed point of the threshold recurrence with boundary clamped,
/// by Gauss-Seidel sweeps from all-zeros in canonical vertex order.
inline ThresholdMap solve_generalized_reachability(const GameGraph& g, const BoundaryMap& boundary,
                                                   const FixedPointOptions& opt = {})
{
    if (boundary.empty()) throw Error(ErrorKind::InvalidArgument, "boundary map is empty");
    const std::size_t n = g.size();
    ThresholdMap m;
    m.mode = opt.mode;
    m.th.assign(n, 0.0);
    m.boundary.assign(n, false);
    std::vector<std::size_t> bverts;
    for (const auto& [v, val] : boundary) {
        if (v >= n) throw Error(ErrorKind::InvalidArgument, "boundary vertex out of range");
        if (!(val >= 0 && val <= 1)) throw Error(ErrorKind::InvalidArgument, "boundary value outside [0,1] at " + g.id(v));
        m.boundary[v] = true;
        m.th[v] = val;
        bverts.push_back(v);
    }
    auto can_reach = reachable_from(reverse(adjacency(g)), bverts);
    for (Vertex v = 0; v < n; ++v)
        if (!can_reach[v]) throw Error(ErrorKind::UnreachableBoundary, "vertex " + g.id(v));
    // Vertices that reach only 1-valued boundary have the unique fixed value 1;
    // pinning them avoids the sublinear crawl x <- 1/(2 - x) toward it.
    std::vector<std::size_t> below_one;
    for (auto v : bverts)
        if (m.th[v] < 1) below_one.push_back(v);
    auto escapes = reachable_from(reverse(adjacency(g)), below_one);
    std::vector<bool> pinned = m.boundary;
    for (Vertex v = 0; v < n; ++v)
        if (!escapes[v] && !pinned[v]) {
            m.th[v] = 1;
            pinned[v] = true;
        }

    double best = INFINITY;
    for (std::size_t sweep = 1;; ++sweep) {
        double change = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (pinned[v]) continue;
            double fp = m.th[argmax_successor(g, v, m.th)], fm = m.th[argmin_successor(g, v, m.th)];
            double next = detail::update(opt.mode, fp, fm);
            if (next < m.th[v]) throw Error(ErrorKind::InvariantBroken, "non-monotone sweep at " + g.id(v));
            change = std::max(change, next - m.th[v]);
            m.th[v] = next;
        }
        m.sweeps = sweep;
        if (change <= opt.tol) {
            m.residual = fixed_point_residual(g, m);
            if (m.residual <= opt.tol) break;
        }
        best = std::min(best, change);
        if (sweep >= opt.max_sweeps) throw IterationCapError(best, sweep);
    }
    for (Vertex v = 0; v < n; ++v) {
        m.plus.push_back(argmax_successor(g, v, m.th));
        m.minus.push_back(argmin_successor(g, v, m.th));
    }
    return m;
}

/// Reachability thresholds for Player 1 with target t: Th(t) = 0, Th = 1 on
/// vertices with no path to t, interior by the fixed point.
inline ThresholdMap solve_reachability(const GameGraph& g, Vertex target, const FixedPointOptions& opt = {})
{
    if (target >= g.size()) throw Error(ErrorKind::InvalidArgument, "target out of range");
    auto reach = reachable_from(reverse(adjacency(g)), {target});
    BoundaryMap b{{target, 0.0}};
    for (Vertex v = 0; v < g.size(); ++v)
        if (!reach[v]) b[v] = 1.0;
    return solve_generalized_reachability(g, b, opt);
}

/// Player 1 reaches t1 before Player 2 reaches t2.
inline ThresholdMap solve_double_reachability(const GameGraph& g, Vertex t1, Vertex t2, const FixedPointOptions& opt = {})
{
    return solve_generalized_reachability(g, {{t1, 0.0}, {t2, 1.0}}, opt);
}

/// Exact bracket for r* = inf{ r : MP(RT^r(G)) >= 0 } on a strongly connected G.
struct CriticalRatio {
    Rational lo, hi; // value(lo) < 0 <= value(hi), or both equal at an endpoint
    std::size_t steps = 0;
    double value() const { return to_double(hi); }
};

inline CriticalRatio critical_ratio(const GameGraph& g, double tol = default_tolerance, std::size_t max_steps = 200)
{
    require_strongly_connected(g);
    auto value_at = [&](const Rational& r) { return random_turn_values(g, r).front(); };
    if (value_at(0) >= 0) return {0, 0, 0};
    if (value_at(1) < 0) return {1, 1, 0};
    CriticalRatio c{0, 1, 0};
    Rational width_tol = from_double(tol);
    while (c.steps < max_steps && Rational(c.hi - c.lo) > width_tol) {
        Rational mid = (c.lo + c.hi) / 2;
        if (value_at(mid) >= 0)
            c.hi = mid;
        else
            c.lo = mid;
        ++c.steps;
    }
    return c;
}

enum class BsccObjective { Parity, MeanPayoff };

/// Boundary value of a strongly connected piece.
inline double classify_bscc(const GameGraph& scc, BsccObjective obj, double tol = default_tolerance)
{
    require_strongly_connected(scc);
    if (obj == BsccObjective::Parity) {
        require_parity(scc);
        int top = 0;
        for (Vertex v = 0; v < scc.size(); ++v) top = std::max(top, scc.parity(v));
        return top % 2 == 1 ? 0.0 : 1.0;
    }
    return critical_ratio(scc, tol).value();
}

inline BoundaryMap bscc_boundary(const GameGraph& g, BsccObjective obj, double tol)
{
    BoundaryMap b;
    for (const auto& comp : bsccs(g)) {
        double val = classify_bscc(g.induced(comp), obj, tol);
        for (Vertex v : comp) b[v] = val;
    }
    return b;
}

inline ThresholdMap solve_parity(const GameGraph& g, const FixedPointOptions& opt = {})
{
    require_parity(g);
    return solve_generalized_reachability(g, bscc_boundary(g, BsccObjective::Parity, opt.tol), opt);
}

inline ThresholdMap solve_meanpayoff_thresholds(const GameGraph& g, const FixedPointOptions& opt = {})
{
    return solve_generalized_reachability(g, bscc_boundary(g, BsccObjective::MeanPayoff, opt.tol), opt);
}

} // namespace bidgame
