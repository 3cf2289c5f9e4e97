#include "rgames/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rgames {

CompiledGame compile_game(const Game& g) {
    ValidationReport rep = validate(g);
    if (!rep.ok()) throw std::invalid_argument("invalid game: " + rep.to_text());
    CompiledGame cg;
    cg.players = g.players;
    cg.objective = g.objective;
    cg.nodes.reserve(g.nodes.size());
    for (const auto& n : g.nodes) {
        CompiledGame::CNode c;
        c.owner = n.owner;
        c.player = n.player;
        for (const auto& s : n.succ) c.succ.push_back(g.node_index(s));
        c.probs = n.probs;
        c.reward = n.reward;
        cg.nodes.push_back(std::move(c));
        cg.ids.push_back(n.id);
        if (n.owner == Owner::player)
            cg.controlled.push_back(static_cast<int>(cg.nodes.size()) - 1);
    }
    cg.initial = g.node_index(g.initial);
    TopoResult topo = topological_order(g);
    cg.acyclic = topo.acyclic;
    if (topo.acyclic)
        for (const auto& id : topo.order) cg.topo.push_back(g.node_index(id));
    return cg;
}

CompiledProfile compile_profile(const CompiledGame& cg, const StationaryProfile& p) {
    CompiledProfile cp;
    cp.rows.resize(cg.nodes.size());
    for (size_t v = 0; v < cg.nodes.size(); ++v) {
        const auto& n = cg.nodes[v];
        if (n.owner != Owner::player) continue;
        auto it = p.choice.find(cg.ids[v]);
        if (it == p.choice.end()) {
            if (n.succ.size() == 1) {
                cp.rows[v] = {Rational(1)};
                continue;
            }
            throw std::invalid_argument("incomplete profile: no choice at node " + cg.ids[v]);
        }
        std::vector<Rational> row(n.succ.size(), Rational(0));
        Rational sum = 0;
        std::map<std::string, Rational> pending = it->second;
        for (size_t e = 0; e < n.succ.size(); ++e) {
            auto pit = pending.find(cg.ids[n.succ[e]]);
            if (pit == pending.end()) continue;
            if (pit->second < 0)
                throw std::invalid_argument("negative probability at node " + cg.ids[v]);
            row[e] = pit->second;
            sum += pit->second;
            pending.erase(pit);
        }
        for (const auto& [succ, prob] : pending)
            if (prob != 0)
                throw std::invalid_argument("profile at node " + cg.ids[v] +
                                            " puts mass on non-successor '" + succ + "'");
        if (sum != 1)
            throw std::invalid_argument("profile at node " + cg.ids[v] + " sums to " +
                                        to_string(sum));
        cp.rows[v] = std::move(row);
    }
    return cp;
}

namespace {

// Outgoing distribution of the induced chain; empty for terminals.
const std::vector<Rational>& chain_row(const CompiledGame& cg, const CompiledProfile& cp, int v) {
    static const std::vector<Rational> empty;
    const auto& n = cg.nodes[v];
    if (n.owner == Owner::chance) return n.probs;
    if (n.owner == Owner::player) return cp.rows[v];
    return empty;
}

// Nodes from which `base` is reachable through positive-probability edges.
std::vector<bool> backward_reachable(const CompiledGame& cg, const CompiledProfile& cp,
                                     const std::vector<bool>& base) {
    size_t n = cg.nodes.size();
    std::vector<std::vector<int>> pred(n);
    for (size_t v = 0; v < n; ++v) {
        const auto& row = chain_row(cg, cp, static_cast<int>(v));
        for (size_t e = 0; e < row.size(); ++e)
            if (row[e] > 0) pred[cg.nodes[v].succ[e]].push_back(static_cast<int>(v));
    }
    std::vector<bool> seen(n, false);
    std::vector<int> queue;
    for (size_t v = 0; v < n; ++v)
        if (base[v]) {
            seen[v] = true;
            queue.push_back(static_cast<int>(v));
        }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w : pred[v])
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
    }
    return seen;
}

// Solves x_v = sum_w P(v,w) x_w + b_v on `support`, with x fixed to 0
// outside. The support set must be such that from every node in it, mass
// leaks out with positive probability along some path, which makes the
// system uniquely solvable. Plain Gaussian elimination over rationals.
std::vector<std::vector<Rational>> solve_absorption(const CompiledGame& cg,
                                                    const CompiledProfile& cp,
                                                    const std::vector<bool>& support,
                                                    const std::vector<std::vector<Rational>>& rhs) {
    size_t n = cg.nodes.size();
    size_t cols = rhs.empty() ? 0 : rhs[0].size();
    std::vector<int> var_of(n, -1);
    std::vector<int> node_of;
    for (size_t v = 0; v < n; ++v)
        if (support[v]) {
            var_of[v] = static_cast<int>(node_of.size());
            node_of.push_back(static_cast<int>(v));
        }
    size_t k = node_of.size();
    // Augmented matrix [I - P | rhs]
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + cols, Rational(0)));
    for (size_t r = 0; r < k; ++r) {
        int v = node_of[r];
        a[r][r] = 1;
        const auto& row = chain_row(cg, cp, v);
        for (size_t e = 0; e < row.size(); ++e) {
            int w = cg.nodes[v].succ[e];
            if (var_of[w] >= 0) a[r][var_of[w]] -= row[e];
        }
        for (size_t c = 0; c < cols; ++c) a[r][k + c] = rhs[v][c];
    }
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        while (piv < k && a[piv][col] == 0) ++piv;
        if (piv == k) throw std::logic_error("absorption system singular");
        std::swap(a[piv], a[col]);
        Rational inv = a[col][col];
        for (size_t c = col; c < k + cols; ++c) a[col][c] /= inv;
        for (size_t r = 0; r < k; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (size_t c = col; c < k + cols; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<std::vector<Rational>> x(n, std::vector<Rational>(cols, Rational(0)));
    for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < cols; ++c) x[node_of[r]][c] = a[r][k + c];
    return x;
}

}  // namespace

std::vector<PayoffVector> node_payoffs(const CompiledGame& cg, const CompiledProfile& cp) {
    if (cg.objective != Objective::terminal_rewards)
        throw std::invalid_argument("expected-reward evaluation needs a terminal-reward game");
    size_t n = cg.nodes.size();
    int m = cg.players;
    std::vector<PayoffVector> val(n, PayoffVector(m, Rational(0)));
    if (cg.acyclic) {
        for (auto it = cg.topo.rbegin(); it != cg.topo.rend(); ++it) {
            int v = *it;
            const auto& node = cg.nodes[v];
            if (node.owner == Owner::terminal) {
                val[v] = node.reward;
                continue;
            }
            const auto& row = chain_row(cg, cp, v);
            for (size_t e = 0; e < row.size(); ++e) {
                if (row[e] == 0) continue;
                const auto& child = val[node.succ[e]];
                for (int i = 0; i < m; ++i) val[v][i] += row[e] * child[i];
            }
        }
        return val;
    }
    // Cyclic: restrict to states that reach a terminal with positive
    // probability; everywhere else the value is 0 by the recursive-game
    // convention.
    std::vector<bool> terminal(n, false);
    for (size_t v = 0; v < n; ++v) terminal[v] = cg.nodes[v].owner == Owner::terminal;
    std::vector<bool> can_reach = backward_reachable(cg, cp, terminal);
    std::vector<bool> support(n, false);
    std::vector<std::vector<Rational>> rhs(n, std::vector<Rational>(m, Rational(0)));
    for (size_t v = 0; v < n; ++v) {
        if (terminal[v] || !can_reach[v]) continue;
        support[v] = true;
        const auto& row = chain_row(cg, cp, static_cast<int>(v));
        for (size_t e = 0; e < row.size(); ++e) {
            int w = cg.nodes[v].succ[e];
            if (terminal[w])
                for (int i = 0; i < m; ++i) rhs[v][i] += row[e] * cg.nodes[w].reward[i];
        }
    }
    auto x = solve_absorption(cg, cp, support, rhs);
    for (size_t v = 0; v < n; ++v) {
        if (terminal[v]) val[v] = cg.nodes[v].reward;
        else val[v] = std::move(x[v]);
    }
    return val;
}

PayoffVector expected_payoffs(const Game& g, const StationaryProfile& p) {
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("expected_payoffs needs a terminal-reward game");
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    return node_payoffs(cg, cp)[cg.initial];
}

std::vector<Rational> reach_probabilities_compiled(const CompiledGame& cg,
                                                   const CompiledProfile& cp,
                                                   const std::vector<bool>& target) {
    size_t n = cg.nodes.size();
    std::vector<Rational> out(n, Rational(0));
    std::vector<bool> can_reach = backward_reachable(cg, cp, target);
    std::vector<bool> support(n, false);
    std::vector<std::vector<Rational>> rhs(n, std::vector<Rational>(1, Rational(0)));
    for (size_t v = 0; v < n; ++v) {
        if (target[v] || !can_reach[v]) continue;
        if (cg.nodes[v].owner == Owner::terminal) continue;
        support[v] = true;
        const auto& row = chain_row(cg, cp, static_cast<int>(v));
        for (size_t e = 0; e < row.size(); ++e)
            if (target[cg.nodes[v].succ[e]]) rhs[v][0] += row[e];
    }
    auto x = solve_absorption(cg, cp, support, rhs);
    for (size_t v = 0; v < n; ++v) {
        if (target[v]) out[v] = 1;
        else if (support[v]) out[v] = x[v][0];
    }
    return out;
}

std::map<std::string, Rational> reach_probabilities(const Game& g, const StationaryProfile& p,
                                                    const std::set<std::string>& target) {
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    std::vector<bool> t(cg.nodes.size(), false);
    for (const auto& id : target) {
        int v = g.node_index(id);
        if (v < 0) throw std::invalid_argument("target node missing: " + id);
        t[v] = true;
    }
    auto probs = reach_probabilities_compiled(cg, cp, t);
    std::map<std::string, Rational> out;
    for (size_t v = 0; v < cg.nodes.size(); ++v) out[cg.ids[v]] = probs[v];
    return out;
}

namespace {

// Tarjan SCCs, returned in reverse topological order of the condensation.
std::vector<std::vector<int>> support_sccs(const CompiledGame& cg, const CompiledProfile& cp) {
    size_t n = cg.nodes.size();
    std::vector<int> low(n, -1), num(n, -1), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    struct Frame {
        int v;
        size_t edge;
    };
    for (size_t s = 0; s < n; ++s) {
        if (num[s] >= 0) continue;
        std::vector<Frame> frames{{static_cast<int>(s), 0}};
        num[s] = low[s] = counter++;
        stack.push_back(static_cast<int>(s));
        on_stack[s] = true;
        while (!frames.empty()) {
            auto& f = frames.back();
            const auto& row = chain_row(cg, cp, f.v);
            bool descended = false;
            while (f.edge < row.size()) {
                size_t e = f.edge++;
                if (row[e] == 0) continue;
                int w = cg.nodes[f.v].succ[e];
                if (num[w] < 0) {
                    num[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[f.v] = std::min(low[f.v], num[w]);
            }
            if (descended) continue;
            if (low[f.v] == num[f.v]) {
                std::vector<int> scc;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = static_cast<int>(sccs.size());
                    scc.push_back(w);
                } while (w != f.v);
                sccs.push_back(std::move(scc));
            }
            int v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }
    return sccs;
}

}  // namespace

PayoffVector mean_payoff(const Game& g, const StationaryProfile& p) {
    if (g.objective != Objective::mean_payoff)
        throw std::invalid_argument("mean_payoff needs a mean-payoff game");
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    size_t n = cg.nodes.size();
    int m = cg.players;

    auto reward_of = [&](int v) -> PayoffVector {
        auto it = g.node_rewards.find(cg.ids[v]);
        if (it != g.node_rewards.end()) return it->second;
        return PayoffVector(m, Rational(0));
    };

    auto sccs = support_sccs(cg, cp);
    // A component is a bottom component when no positive edge leaves it.
    std::vector<int> comp(n, -1);
    for (size_t c = 0; c < sccs.size(); ++c)
        for (int v : sccs[c]) comp[v] = static_cast<int>(c);

    PayoffVector total(m, Rational(0));
    for (size_t c = 0; c < sccs.size(); ++c) {
        const auto& scc = sccs[c];
        bool bottom = true;
        for (int v : scc) {
            const auto& row = chain_row(cg, cp, v);
            for (size_t e = 0; e < row.size(); ++e)
                if (row[e] > 0 && comp[cg.nodes[v].succ[e]] != static_cast<int>(c)) bottom = false;
        }
        if (!bottom) continue;
        // Terminals self-loop by convention: a singleton terminal component
        // is a cycle of length 1.
        if (!(scc.size() == 1 && cg.nodes[scc[0]].owner == Owner::terminal)) {
            for (int v : scc) {
                const auto& row = chain_row(cg, cp, v);
                int out = 0;
                for (size_t e = 0; e < row.size(); ++e)
                    if (row[e] > 0) ++out;
                if (out != 1)
                    throw std::invalid_argument(
                        "unsupported mean-payoff structure: bottom component with branching at "
                        "node " +
                        cg.ids[v]);
            }
        }
        PayoffVector avg(m, Rational(0));
        for (int v : scc) {
            PayoffVector r = reward_of(v);
            for (int i = 0; i < m; ++i) avg[i] += r[i];
        }
        for (int i = 0; i < m; ++i) avg[i] /= static_cast<int>(scc.size());
        std::vector<bool> target(n, false);
        for (int v : scc) target[v] = true;
        Rational absorb = reach_probabilities_compiled(cg, cp, target)[cg.initial];
        for (int i = 0; i < m; ++i) total[i] += absorb * avg[i];
    }
    return total;
}

PayoffVector objective_payoffs(const Game& g, const StationaryProfile& p) {
    if (g.objective != Objective::reach && g.objective != Objective::safe)
        throw std::invalid_argument("objective_payoffs needs a reach or safe game");
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    size_t n = cg.nodes.size();
    PayoffVector out(g.players, Rational(0));
    for (int i = 0; i < g.players; ++i) {
        std::vector<bool> set(n, false);
        if (static_cast<size_t>(i) < g.objective_sets.size())
            for (const auto& id : g.objective_sets[i]) set[g.node_index(id)] = true;
        if (g.objective == Objective::reach) {
            out[i] = reach_probabilities_compiled(cg, cp, set)[cg.initial];
        } else {
            std::vector<bool> unsafe(n, false);
            for (size_t v = 0; v < n; ++v) unsafe[v] = !set[v];
            out[i] = 1 - reach_probabilities_compiled(cg, cp, unsafe)[cg.initial];
        }
    }
    return out;
}

namespace {

struct BinaryTerm {
    Rational weight;
    std::vector<Rational> rewards;
};

// Layer-cake decomposition of a reward vector into binary vectors: sort the
// distinct magnitudes descending and peel threshold indicators.
std::vector<BinaryTerm> staircase(const std::vector<Rational>& u, bool signed_unit) {
    std::vector<Rational> mags;
    for (const auto& r : u) {
        Rational a = r < 0 ? Rational(-r) : r;
        if (a > 0) mags.push_back(a);
    }
    std::sort(mags.begin(), mags.end(), std::greater<Rational>());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    std::vector<BinaryTerm> terms;
    Rational covered = mags.empty() ? Rational(0) : mags.front();
    if (covered < 1) {
        terms.push_back({1 - covered, std::vector<Rational>(u.size(), Rational(0))});
    }
    for (size_t k = 0; k < mags.size(); ++k) {
        Rational next = k + 1 < mags.size() ? mags[k + 1] : Rational(0);
        BinaryTerm t;
        t.weight = mags[k] - next;
        for (const auto& r : u) {
            Rational a = r < 0 ? Rational(-r) : r;
            if (a >= mags[k]) t.rewards.push_back(signed_unit && r < 0 ? Rational(-1) : Rational(1));
            else t.rewards.push_back(Rational(0));
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

bool in_target(const std::vector<Rational>& u, BinarySet target) {
    for (const auto& r : u) {
        if (r == 0 || r == 1) continue;
        if (target == BinarySet::signed_unit && r == -1) continue;
        return false;
    }
    return true;
}

}  // namespace

Game normalize_rewards_to_binary(const Game& g, BinarySet target) {
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("normalize_rewards_to_binary needs terminal rewards");
    for (const auto& n : g.nodes) {
        if (n.owner != Owner::terminal) continue;
        for (const auto& r : n.reward) {
            if (target == BinarySet::zero_one && (r < 0 || r > 1))
                throw std::invalid_argument("reward out of [0,1] at terminal " + n.id);
            if (target == BinarySet::signed_unit && (r < -1 || r > 1))
                throw std::invalid_argument("reward out of [-1,1] at terminal " + n.id);
        }
    }
    Game out;
    out.players = g.players;
    out.objective = g.objective;
    out.initial = g.initial;
    for (const auto& n : g.nodes) {
        if (n.owner != Owner::terminal || in_target(n.reward, target)) {
            out.add_node(n);
            continue;
        }
        auto terms = staircase(n.reward, target == BinarySet::signed_unit);
        Node chance;
        chance.id = n.id;
        chance.owner = Owner::chance;
        std::vector<Node> fresh;
        for (size_t k = 0; k < terms.size(); ++k) {
            Node t;
            t.id = n.id + ".b" + std::to_string(k);
            t.owner = Owner::terminal;
            t.reward = terms[k].rewards;
            chance.succ.push_back(t.id);
            chance.probs.push_back(terms[k].weight);
            fresh.push_back(std::move(t));
        }
        out.add_node(std::move(chance));
        for (auto& t : fresh) out.add_node(std::move(t));
    }
    return out;
}

std::vector<AffineMap> objective_affine_maps(const Game& g, Objective kind) {
    if (kind != Objective::reach && kind != Objective::safe)
        throw std::invalid_argument("to_objective_form: kind must be reach or safe");
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("to_objective_form needs a terminal-reward game");
    std::vector<Rational> scale(g.players, Rational(1));
    std::vector<bool> nonpositive(g.players, true);
    for (const auto& n : g.nodes) {
        if (n.owner != Owner::terminal) continue;
        for (int i = 0; i < g.players; ++i) {
            Rational a = n.reward[i] < 0 ? Rational(-n.reward[i]) : n.reward[i];
            if (kind == Objective::reach && n.reward[i] < 0)
                throw std::invalid_argument("reach form needs non-negative rewards (terminal " +
                                            n.id + ")");
            if (n.reward[i] > 0) nonpositive[i] = false;
            if (a > scale[i]) scale[i] = a;
        }
    }
    std::vector<AffineMap> maps(g.players);
    for (int i = 0; i < g.players; ++i) {
        if (kind == Objective::reach || nonpositive[i]) {
            maps[i] = {1 / scale[i], Rational(0)};
        } else {
            maps[i] = {1 / (2 * scale[i]), Rational(-1, 2)};
        }
    }
    return maps;
}

Game to_objective_form(const Game& g, Objective kind) {
    std::vector<AffineMap> maps = objective_affine_maps(g, kind);
    Game mapped;
    mapped.players = g.players;
    mapped.objective = Objective::terminal_rewards;
    mapped.initial = g.initial;
    for (const auto& n : g.nodes) {
        Node c = n;
        if (n.owner == Owner::terminal)
            for (int i = 0; i < g.players; ++i) c.reward[i] = maps[i](c.reward[i]);
        mapped.add_node(std::move(c));
    }
    Game bin = normalize_rewards_to_binary(
        mapped, kind == Objective::reach ? BinarySet::zero_one : BinarySet::signed_unit);
    Game out;
    out.players = bin.players;
    out.objective = kind;
    out.initial = bin.initial;
    out.objective_sets.resize(bin.players);
    for (const auto& n : bin.nodes) {
        Node c = n;
        std::vector<Rational> reward = n.reward;
        if (n.owner == Owner::terminal) c.reward.clear();
        out.add_node(std::move(c));
        if (n.owner != Owner::terminal) {
            if (kind == Objective::safe)
                for (int i = 0; i < bin.players; ++i) out.objective_sets[i].push_back(n.id);
            continue;
        }
        for (int i = 0; i < bin.players; ++i) {
            if (kind == Objective::reach && reward[i] == 1) out.objective_sets[i].push_back(n.id);
            if (kind == Objective::safe && reward[i] == 0) out.objective_sets[i].push_back(n.id);
        }
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

MonteCarloResult simulate_payoffs(const Game& g, const StationaryProfile& p, std::uint64_t seed,
                                  long long samples, int step_cap) {
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    int m = cg.players;

    // Per-node cumulative distributions in double.
    std::vector<std::vector<double>> cum(cg.nodes.size());
    for (size_t v = 0; v < cg.nodes.size(); ++v) {
        const auto& row = chain_row(cg, cp, static_cast<int>(v));
        double acc = 0;
        for (const auto& q : row) {
            acc += to_double(q);
            cum[v].push_back(acc);
        }
    }
    std::vector<std::vector<double>> rew(cg.nodes.size());
    for (size_t v = 0; v < cg.nodes.size(); ++v)
        if (cg.nodes[v].owner == Owner::terminal)
            for (const auto& r : cg.nodes[v].reward) rew[v].push_back(to_double(r));

    const long long chunk_size = 1024;
    const long long chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<std::vector<double>> sums(chunks, std::vector<double>(m, 0.0));
    std::vector<std::vector<double>> sqsums(chunks, std::vector<double>(m, 0.0));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long c = 0; c < chunks; ++c) {
        std::mt19937_64 rng(splitmix64(seed ^ (0xabcdef123456ULL + static_cast<std::uint64_t>(c))));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        long long lo = c * chunk_size;
        long long hi = std::min(samples, lo + chunk_size);
        for (long long s = lo; s < hi; ++s) {
            int v = cg.initial;
            int steps = 0;
            while (cg.nodes[v].owner != Owner::terminal && steps++ < step_cap) {
                double u = unif(rng);
                const auto& cd = cum[v];
                size_t e = 0;
                while (e + 1 < cd.size() && u >= cd[e]) ++e;
                v = cg.nodes[v].succ[e];
            }
            if (cg.nodes[v].owner == Owner::terminal) {
                for (int i = 0; i < m; ++i) {
                    sums[c][i] += rew[v][i];
                    sqsums[c][i] += rew[v][i] * rew[v][i];
                }
            }
            // Non-terminating plays contribute 0.
        }
    }

    MonteCarloResult res;
    res.samples = samples;
    res.mean.assign(m, 0.0);
    res.std_error.assign(m, 0.0);
    std::vector<double> sq(m, 0.0);
    for (long long c = 0; c < chunks; ++c)
        for (int i = 0; i < m; ++i) {
            res.mean[i] += sums[c][i];
            sq[i] += sqsums[c][i];
        }
    for (int i = 0; i < m; ++i) {
        double mean = res.mean[i] / static_cast<double>(samples);
        double var = sq[i] / static_cast<double>(samples) - mean * mean;
        if (var < 0) var = 0;
        res.mean[i] = mean;
        res.std_error[i] = std::sqrt(var / static_cast<double>(samples));
    }
    return res;
}

}  // namespace rgames
