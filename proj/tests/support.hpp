#pragma once

#include "rgames/equilibrium.hpp"
#include "rgames/evaluate.hpp"
#include "rgames/game.hpp"

#include <random>

namespace testsupport {

using namespace rgames;

inline Rational R(const std::string& s) { return parse_rational(s); }

inline std::vector<Rational> RV(const std::string& csv) { return parse_rational_list(csv); }

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int den_bound, bool allow_negative = false) {
    std::uniform_int_distribution<int> den(1, den_bound);
    int d = den(rng);
    std::uniform_int_distribution<int> num(0, d);
    Rational r(num(rng), d);
    if (allow_negative && std::uniform_int_distribution<int>(0, 1)(rng)) r = -r;
    return r;
}

// A random distribution with positive rational entries summing to 1.
inline std::vector<Rational> random_distribution(Rng& rng, int k, int den_bound) {
    std::uniform_int_distribution<int> pick(1, den_bound);
    std::vector<int> weights(k);
    int total = 0;
    for (int& w : weights) {
        w = pick(rng);
        total += w;
    }
    std::vector<Rational> out;
    for (int w : weights) out.emplace_back(Rational(w) / total);
    return out;
}

struct GameGenOptions {
    int players = 3;
    int inner_nodes = 8;
    int terminals = 4;
    int max_degree = 3;
    int den_bound = 6;
    bool allow_negative_rewards = false;
    double chance_fraction = 0.3;
};

// Random acyclic game: nodes are ordered and edges only go forward, so the
// result is a DAG by construction.
inline Game random_acyclic_game(Rng& rng, const GameGenOptions& opt = {}) {
    Game g;
    g.players = opt.players;
    int total = opt.inner_nodes + opt.terminals;
    std::uniform_int_distribution<int> owner_pick(1, opt.players);
    std::uniform_real_distribution<double> coin(0, 1);
    for (int v = 0; v < total; ++v) {
        Node n;
        n.id = "n" + std::to_string(v);
        if (v >= opt.inner_nodes) {
            n.owner = Owner::terminal;
            for (int i = 0; i < opt.players; ++i)
                n.reward.push_back(random_rational(rng, opt.den_bound, opt.allow_negative_rewards));
        } else {
            int lo = v + 1;
            std::uniform_int_distribution<int> succ_count(
                1, std::min(opt.max_degree, total - lo));
            int k = succ_count(rng);
            std::uniform_int_distribution<int> target(lo, total - 1);
            std::vector<int> chosen;
            while (static_cast<int>(chosen.size()) < k) {
                int t = target(rng);
                if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                    chosen.push_back(t);
            }
            for (int t : chosen) n.succ.push_back("n" + std::to_string(t));
            if (coin(rng) < opt.chance_fraction) {
                n.owner = Owner::chance;
                n.probs = random_distribution(rng, k, opt.den_bound);
            } else {
                n.owner = Owner::player;
                n.player = owner_pick(rng);
            }
        }
        g.add_node(std::move(n));
    }
    g.initial = "n0";
    return g;
}

// Random cyclic game: like the acyclic generator plus a few back edges on
// controlled/chance nodes. Rewards stay non-negative so best responses are
// defined.
inline Game random_cyclic_game(Rng& rng, GameGenOptions opt = {}) {
    opt.allow_negative_rewards = false;
    Game g = random_acyclic_game(rng, opt);
    std::uniform_int_distribution<int> node_pick(0, opt.inner_nodes - 1);
    int back_edges = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < back_edges; ++k) {
        int from = node_pick(rng);
        int to = node_pick(rng);
        Node& n = g.nodes[from];
        std::string target = "n" + std::to_string(to);
        if (std::find(n.succ.begin(), n.succ.end(), target) != n.succ.end()) continue;
        n.succ.push_back(target);
        if (n.owner == Owner::chance) {
            // Redistribute: halve the last probability and give it to the
            // new edge.
            Rational half = n.probs.back() / 2;
            n.probs.back() = half;
            n.probs.push_back(half);
        }
    }
    return g;
}

inline StationaryProfile random_profile(Rng& rng, const Game& g, int den_bound = 6) {
    StationaryProfile p;
    for (const auto& n : g.nodes) {
        if (n.owner != Owner::player) continue;
        auto dist = random_distribution(rng, static_cast<int>(n.succ.size()), den_bound);
        std::map<std::string, Rational> row;
        for (size_t e = 0; e < n.succ.size(); ++e)
            if (dist[e] != 0) row[n.succ[e]] = dist[e];
        p.choice[n.id] = std::move(row);
    }
    return p;
}

// Independent payoff oracle for acyclic games: explicit enumeration of all
// root-to-terminal paths with their probabilities.
inline PayoffVector path_enumeration_payoffs(const Game& g, const StationaryProfile& p) {
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    PayoffVector total(g.players, Rational(0));
    struct Item {
        int node;
        Rational prob;
    };
    std::vector<Item> stack{{cg.initial, Rational(1)}};
    while (!stack.empty()) {
        auto [v, prob] = stack.back();
        stack.pop_back();
        const auto& n = cg.nodes[v];
        if (n.owner == Owner::terminal) {
            for (int i = 0; i < g.players; ++i) total[i] += prob * n.reward[i];
            continue;
        }
        const auto& row = n.owner == Owner::chance ? n.probs : cp.rows[v];
        for (size_t e = 0; e < n.succ.size(); ++e)
            if (row[e] != 0) stack.push_back({n.succ[e], prob * row[e]});
    }
    return total;
}

// Number of distinct paths from the initial node (counts terminal visits
// and every intermediate node visit once per path prefix).
inline long long count_paths(const Game& g) {
    CompiledGame cg = compile_game(g);
    std::vector<long long> paths(cg.nodes.size(), 0);
    long long total = 0;
    paths[cg.initial] = 1;
    for (int v : cg.topo) {
        if (paths[v] == 0) continue;
        total += paths[v];
        for (int w : cg.nodes[v].succ) paths[w] += paths[v];
    }
    return total;
}

// Brute-force best response over all pure positional deviations.
inline Rational brute_force_best_response(const Game& g, const StationaryProfile& p, int player) {
    std::vector<std::string> own;
    for (const auto& n : g.nodes)
        if (n.owner == Owner::player && n.player == player) own.push_back(n.id);
    std::vector<size_t> choice(own.size(), 0);
    Rational best;
    bool first = true;
    while (true) {
        StationaryProfile q = p;
        for (size_t k = 0; k < own.size(); ++k) {
            const Node* n = g.find(own[k]);
            q.choice[own[k]] = {{n->succ[choice[k]], Rational(1)}};
        }
        Rational value = expected_payoffs(g, q)[player - 1];
        if (first || value > best) best = value;
        first = false;
        size_t k = 0;
        while (k < own.size()) {
            const Node* n = g.find(own[k]);
            if (++choice[k] < n->succ.size()) break;
            choice[k] = 0;
            ++k;
        }
        if (k == own.size()) break;
    }
    return best;
}

inline PayoffDemand demand(const std::string& csv) { return {RV(csv)}; }

}  // namespace testsupport
