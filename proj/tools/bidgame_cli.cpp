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
#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "bidgame/auction.hpp"
#include "bidgame/etr.hpp"
#include "bidgame/io.hpp"
#include "bidgame/simulator.hpp"
#include "bidgame/stochastic.hpp"
#include "bidgame/strategy/factory.hpp"

using namespace bidgame;

namespace {

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

Vertex vertex_of(const GameGraph& g, const std::string& id)
{
    auto v = g.find(id);
    if (!v) throw Error(ErrorKind::InvalidArgument, "unknown vertex " + id);
    return *v;
}

double tolerance(double flag) { return flag > 0 ? flag : solver_tolerance(); }

std::string with_seed(const std::string& path, std::uint64_t seed, bool many)
{
    if (!many) return path;
    auto dot = path.find_last_of('.');
    auto slash = path.find_last_of('/');
    std::string suffix = "-seed" + std::to_string(seed);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

struct SimulateArgs {
    std::string game, max = "walk", min = "queue", rule = "poorman", tie = "min-wins", start, trace, summary;
    std::vector<std::string> budgets{"11", "9"};
    std::size_t rounds = 10000, seeds = 1;
    std::uint64_t seed = 0;
    bool exact = false;
    double tol = 0;
};

struct SeedResult {
    json summary;
    std::string csv;
    bool illegal = false;
    std::string error;
};

SeedResult run_seed(const GameGraph& g, const SimulateArgs& a, std::uint64_t seed)
{
    SeedResult out;
    const double tol = tolerance(a.tol);
    BuiltBidder max = make_bidder(parse_strategy_spec(a.max), {&g, 1, seed, tol});
    BuiltBidder min = make_bidder(parse_strategy_spec(a.min), {&g, 2, seed, tol});

    MatchConfig cfg;
    cfg.game = &g;
    cfg.start = a.start.empty() ? 0 : vertex_of(g, a.start);
    cfg.budget1 = parse_rational(a.budgets.at(0));
    cfg.budget2 = parse_rational(a.budgets.at(1));
    cfg.rule = a.rule == "poorman" ? PaymentRule::Poorman : a.rule == "richman" ? PaymentRule::Richman : PaymentRule::SecondPricePoorman;
    cfg.tie = a.tie == "min-wins" ? TieBreak::MinWins : a.tie == "max-wins" ? TieBreak::MaxWins : TieBreak::Alternate;
    cfg.rounds = a.rounds;
    cfg.seed = seed;
    if (!a.exact) cfg.quantum = default_quantum(cfg.budget1, cfg.budget2);
    cfg.keep_records = !a.trace.empty();

    json extra = json::object();
    if (max.table && min.table) throw Error(ErrorKind::InvalidArgument, "at most one player can run the walk");
    if (min.table) {
        const PotentialTable& t = *min.table;
        Rational kappa = cfg.budget1 == 0 ? Rational(1) : choose_kappa(t.nu, Rational(cfg.budget2 / cfg.budget1));
        extra["walk"] = {{"player", 2}, {"ratio", to_string(*min.walk_ratio)}, {"value", to_string(-t.value)}, {"kappa", to_string(kappa)}};
    }
    if (max.table) {
        const PotentialTable& t = *max.table;
        Rational kappa = cfg.budget2 == 0 ? Rational(1) : choose_kappa(t.nu, Rational(cfg.budget1 / cfg.budget2));
        cfg.energy_floor = walk_energy_bound(t, kappa);
        extra["walk"] = {{"ratio", to_string(*max.walk_ratio)},
                         {"value", to_string(t.value)},
                         {"kappa", to_string(kappa)},
                         {"energy_bound", to_string(*cfg.energy_floor)}};
    }
    if (max.initial_energy > 0) {
        cfg.initial_energy = max.initial_energy;
        cfg.energy_floor = Rational(1);
        extra["warmup"] = {{"initial_energy", max.initial_energy}};
    }

    json s = {{"seed", seed},
              {"max", max.bidder->name()},
              {"min", min.bidder->name()},
              {"rule", to_string(cfg.rule)},
              {"tie", to_string(cfg.tie)},
              {"budgets", {to_string(cfg.budget1), to_string(cfg.budget2)}},
              {"quantum", cfg.quantum ? json(to_string(*cfg.quantum)) : json(nullptr)}};
    PlayTrace t;
    try {
        t = run_match(cfg, *max.bidder, *min.bidder);
    } catch (const IllegalBidError& e) {
        out.illegal = true;
        out.error = e.what();
        s["illegal_bid"] = {{"player", e.player()}, {"round", e.round()}, {"what", e.what()}};
        t = e.partial();
    }
    s["rounds"] = t.rounds_played;
    s["wins"] = {t.wins1, t.wins2};
    s["final_budgets"] = {to_string(t.budget1), to_string(t.budget2)};
    s["energy"] = to_string(t.energy);
    s["min_energy"] = to_string(t.min_energy);
    s["min_tail_average"] = t.min_tail_average ? json(to_string(*t.min_tail_average)) : json(nullptr);
    s["min_tail_average_approx"] = t.min_tail_average ? json(to_double(*t.min_tail_average)) : json(nullptr);
    s["max_tail_average"] = t.max_tail_average ? json(to_string(*t.max_tail_average)) : json(nullptr);
    s["violations"] = t.violation_count;
    s["violation_log"] = t.violations;
    if (auto* q = dynamic_cast<QueueBidder*>(min.bidder.get()))
        extra["queue"] = {{"empty_events", q->empty_events()}, {"ratio_failures", q->ratio_failures()}, {"capped_bids", q->capped_bids()}};
    if (auto* sf = dynamic_cast<SlushFundBidder*>(max.bidder.get()))
        extra["slush"] = {{"min_growth", sf->min_growth() ? json(to_string(*sf->min_growth())) : json(nullptr)}};
    for (auto it = extra.begin(); it != extra.end(); ++it) s[it.key()] = it.value();
    out.summary = std::move(s);
    if (cfg.keep_records) out.csv = trace_csv(g, t);
    return out;
}

int cmd_simulate(const SimulateArgs& a)
{
    GameGraph g = load_game(a.game);
    if (a.budgets.size() != 2) throw Error(ErrorKind::InvalidArgument, "--budgets takes two values");
    const Rational b1 = parse_rational(a.budgets[0]), b2 = parse_rational(a.budgets[1]);
    if (b1 < 0 || b2 < 0 || b1 + b2 <= 0) throw Error(ErrorKind::InvalidArgument, "budgets must be >= 0 with positive total");
    std::vector<SeedResult> results(a.seeds);
    std::vector<std::exception_ptr> errors(a.seeds);
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(a.seeds, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < a.seeds; i += workers) {
                try {
                    results[i] = run_seed(g, a, a.seed + i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    json runs = json::array();
    std::size_t violations = 0;
    std::string illegal;
    std::vector<double> tails;
    for (std::size_t i = 0; i < a.seeds; ++i) {
        if (!a.trace.empty()) emit(results[i].csv, with_seed(a.trace, a.seed + i, a.seeds > 1));
        violations += results[i].summary["violations"].get<std::size_t>();
        if (results[i].illegal && illegal.empty()) illegal = results[i].error;
        if (!results[i].summary["min_tail_average_approx"].is_null())
            tails.push_back(results[i].summary["min_tail_average_approx"].get<double>());
        runs.push_back(std::move(results[i].summary));
    }
    json summary = {{"vertices", g.size()}, {"runs", std::move(runs)}, {"total_violations", violations}};
    if (!tails.empty()) summary["min_tail_average_min"] = *std::min_element(tails.begin(), tails.end());
    emit(summary.dump(2) + "\n", a.summary);
    if (!illegal.empty()) {
        std::cerr << "error: " << illegal << "\n";
        return 4;
    }
    if (violations > 0) {
        std::cerr << "error: InvariantBroken: " << violations << " invariant violation(s)\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Poorman-bidding graph games: thresholds, mean-payoff values, strategies and simulation"};
    app.require_subcommand(1);

    std::string game, out, target, avoid;
    double tol = 0;

    auto* reach = app.add_subcommand("solve-reachability", "Player 1 reachability thresholds");
    reach->add_option("game", game, "game JSON")->required();
    reach->add_option("--target", target, "Player 1's target vertex")->required();
    reach->add_option("--avoid", avoid, "Player 2's target vertex (double reachability)");
    reach->add_option("--tol", tol, "fixed-point tolerance");
    reach->add_option("--out", out, "output file (default stdout)");

    auto* parity = app.add_subcommand("solve-parity", "parity thresholds via BSCC reduction");
    parity->add_option("game", game, "game JSON")->required();
    parity->add_option("--tol", tol, "fixed-point tolerance");
    parity->add_option("--out", out, "output file (default stdout)");

    auto* mp = app.add_subcommand("solve-mp", "mean-payoff thresholds via BSCC critical ratios");
    mp->add_option("game", game, "game JSON")->required();
    mp->add_option("--tol", tol, "fixed-point and bisection tolerance");
    mp->add_option("--out", out, "output file (default stdout)");

    std::string ratio;
    bool general = false;
    auto* value = app.add_subcommand("value", "mean-payoff value of the random-turn game and potentials");
    value->add_option("game", game, "game JSON")->required();
    value->add_option("--ratio", ratio, "ratio r in [0,1], fraction or decimal")->required();
    value->add_flag("--general", general, "allow games that are not strongly connected");
    value->add_option("--out", out, "output file (default stdout)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "play two strategies against each other");
    simulate->add_option("game", sim.game, "game JSON")->required();
    simulate->add_option("--max", sim.max, "Player 1 strategy: walk|queue|const|uniform|zero|warmup|slush[:key=value,...]");
    simulate->add_option("--min", sim.min, "Player 2 strategy: queue|const|uniform|zero|walk[:key=value,...]");
    simulate->add_option("--budgets", sim.budgets, "initial budgets B1 B2")->expected(2);
    simulate->add_option("--rounds", sim.rounds, "horizon N");
    simulate->add_option("--seeds", sim.seeds, "number of seeded runs")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "first seed");
    simulate->add_option("--rule", sim.rule, "payment rule")->check(CLI::IsMember({"poorman", "richman", "second-price"}));
    simulate->add_option("--tie", sim.tie, "tie-breaking")->check(CLI::IsMember({"min-wins", "max-wins", "alternate"}));
    simulate->add_option("--start", sim.start, "initial vertex (default: first id)");
    simulate->add_flag("--exact", sim.exact, "unrestricted rational bids instead of the bid grid");
    simulate->add_option("--trace", sim.trace, "per-round CSV (suffixed -seedN when several seeds)");
    simulate->add_option("--summary", sim.summary, "summary JSON (default stdout)");
    simulate->add_option("--tol", sim.tol, "solver tolerance for strategy set-up");

    std::string vertex, objective;
    auto* etr = app.add_subcommand("export-etr", "emit a QF_NRA program deciding Th(v) >= r");
    etr->add_option("game", game, "game JSON")->required();
    etr->add_option("--vertex", vertex, "query vertex")->required();
    etr->add_option("--ratio", ratio, "query ratio r")->required();
    etr->add_option("--objective", objective, "parity|mp (default: parity when indices are present)")
        ->check(CLI::IsMember({"parity", "mp"}));
    etr->add_option("--out", out, "output file (default stdout)");

    std::size_t slots = 0;
    std::string rewards;
    auto* auction = app.add_subcommand("auction", "build the repeated-auction game A_{k,rho}");
    auction->add_option("--slots", slots, "number of slots k")->check(CLI::PositiveNumber);
    auction->add_option("--rewards", rewards, "JSON with a reward table over k-bit strings")->required();
    auction->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*reach || *parity || *mp) {
            GameGraph g = load_game(game);
            FixedPointOptions opt;
            opt.tol = tolerance(tol);
            ThresholdMap m = *reach ? (avoid.empty() ? solve_reachability(g, vertex_of(g, target), opt)
                                                     : solve_double_reachability(g, vertex_of(g, target), vertex_of(g, avoid), opt))
                           : *parity ? solve_parity(g, opt)
                                     : solve_meanpayoff_thresholds(g, opt);
            emit(thresholds_to_json(g, m, opt.tol).dump(2) + "\n", out);
        } else if (*value) {
            GameGraph g = load_game(game);
            Rational r = parse_rational(ratio);
            if (r < 0 || r > 1) throw Error(ErrorKind::InvalidArgument, "ratio must lie in [0,1]");
            json j = {{"ratio", to_string(r)}};
            if (is_strongly_connected(g)) {
                auto vals = random_turn_values(g, r);
                j["value"] = to_string(vals.front());
                if (r > 0 && r < 1) j["potentials"] = potentials_to_json(g, potentials(g, r));
            } else {
                if (!general) require_strongly_connected(g);
                json vals = json::object();
                auto v = random_turn_values(g, r);
                for (Vertex u = 0; u < g.size(); ++u) vals[g.id(u)] = to_string(v[u]);
                j["values"] = std::move(vals);
            }
            emit(j.dump(2) + "\n", out);
        } else if (*simulate) {
            return cmd_simulate(sim);
        } else if (*etr) {
            GameGraph g = load_game(game);
            Vertex v = vertex_of(g, vertex);
            Rational r = parse_rational(ratio);
            if (objective.empty()) objective = g.has_parity() ? "parity" : "mp";
            EtrProgram p = objective == "parity" ? emit_parity_threshbud(g, v, r) : emit_mp_threshbud(g, v, r);
            std::string text = p.to_smtlib();
            read_smtlib(text);
            emit(text, out);
        } else if (*auction) {
            AuctionSpec spec = load_auction_spec(rewards);
            if (slots > 0) spec.slots = slots;
            emit(dump_game(build_auction_game(spec)), out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
