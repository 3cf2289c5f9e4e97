#include "rgames/equilibrium.hpp"

#include <algorithm>
#include <climits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rgames {

namespace {

const std::vector<Rational>& row_of(const CompiledGame& cg, const CompiledProfile& cp, int v) {
    static const std::vector<Rational> empty;
    const auto& n = cg.nodes[v];
    if (n.owner == Owner::chance) return n.probs;
    if (n.owner == Owner::player) return cp.rows[v];
    return empty;
}

// Backward induction for one player's best-response values; fills an argmax
// certificate (first maximizer in successor order) when `argmax` is given.
std::vector<Rational> acyclic_best_response(const CompiledGame& cg, const CompiledProfile& cp,
                                            int player, std::vector<int>* argmax) {
    std::vector<Rational> val(cg.nodes.size(), Rational(0));
    for (auto it = cg.topo.rbegin(); it != cg.topo.rend(); ++it) {
        int v = *it;
        const auto& n = cg.nodes[v];
        if (n.owner == Owner::terminal) {
            val[v] = n.reward[player - 1];
            continue;
        }
        if (n.owner == Owner::player && n.player == player) {
            int best = 0;
            for (size_t e = 1; e < n.succ.size(); ++e)
                if (val[n.succ[e]] > val[n.succ[best]]) best = static_cast<int>(e);
            val[v] = val[n.succ[best]];
            if (argmax) (*argmax)[v] = best;
            continue;
        }
        const auto& row = row_of(cg, cp, v);
        Rational acc = 0;
        for (size_t e = 0; e < row.size(); ++e)
            if (row[e] != 0) acc += row[e] * val[n.succ[e]];
        val[v] = acc;
    }
    return val;
}

// Evaluates the deviator's fixed positional policy exactly: the induced
// chain's expected terminal reward for `player` (0 on non-termination).
std::vector<Rational> policy_values(const CompiledGame& cg, const CompiledProfile& cp, int player,
                                    const std::vector<int>& policy) {
    CompiledProfile mixed = cp;
    for (int v : cg.controlled) {
        if (cg.nodes[v].player != player) continue;
        std::vector<Rational> pure(cg.nodes[v].succ.size(), Rational(0));
        pure[policy[v]] = 1;
        mixed.rows[v] = std::move(pure);
    }
    auto vals = node_payoffs(cg, mixed);
    std::vector<Rational> out(cg.nodes.size());
    for (size_t v = 0; v < cg.nodes.size(); ++v) out[v] = vals[v][player - 1];
    return out;
}

std::vector<Rational> cyclic_best_response(const CompiledGame& cg, const CompiledProfile& cp,
                                           int player, std::vector<int>* argmax) {
    for (const auto& n : cg.nodes)
        if (n.owner == Owner::terminal && n.reward[player - 1] < 0)
            throw std::invalid_argument(
                "unsupported MDP class: cyclic game with negative rewards for player " +
                std::to_string(player));

    std::vector<int> policy(cg.nodes.size(), 0);
    std::vector<Rational> val = policy_values(cg, cp, player, policy);
    // Strict-improvement policy iteration. Each switch strictly increases
    // the value vector, so the loop visits each policy at most once.
    for (long long round = 0;; ++round) {
        if (round > 1000000) throw std::logic_error("policy iteration failed to terminate");
        bool switched = false;
        for (int v : cg.controlled) {
            const auto& n = cg.nodes[v];
            if (n.player != player) continue;
            int best = policy[v];
            for (size_t e = 0; e < n.succ.size(); ++e)
                if (val[n.succ[e]] > val[n.succ[best]]) {
                    best = static_cast<int>(e);
                    break;  // lowest strictly improving successor
                }
            if (best != policy[v]) {
                policy[v] = best;
                switched = true;
            }
        }
        if (!switched) break;
        val = policy_values(cg, cp, player, policy);
    }
    if (argmax)
        for (int v : cg.controlled)
            if (cg.nodes[v].player == player) (*argmax)[v] = policy[v];
    return val;
}

}  // namespace

std::vector<Rational> best_response_values(const CompiledGame& cg, const CompiledProfile& cp,
                                           int player) {
    if (cg.objective != Objective::terminal_rewards)
        throw std::invalid_argument("best responses need a terminal-reward game");
    return cg.acyclic ? acyclic_best_response(cg, cp, player, nullptr)
                      : cyclic_best_response(cg, cp, player, nullptr);
}

BestResponse best_response(const Game& g, const StationaryProfile& p, int player) {
    if (player < 1 || player > g.players) throw std::invalid_argument("player index out of range");
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("best responses need a terminal-reward game");
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    std::vector<int> argmax(cg.nodes.size(), 0);
    std::vector<Rational> val = cg.acyclic ? acyclic_best_response(cg, cp, player, &argmax)
                                           : cyclic_best_response(cg, cp, player, &argmax);
    BestResponse br;
    br.value = val[cg.initial];
    for (int v : cg.controlled) {
        if (cg.nodes[v].player != player) continue;
        br.strategy[cg.ids[v]] = cg.ids[cg.nodes[v].succ[argmax[v]]];
    }
    return br;
}

std::vector<Rational> regret_vector(const Game& g, const StationaryProfile& p) {
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    auto payoffs = node_payoffs(cg, cp)[cg.initial];
    std::vector<Rational> regrets(cg.players);
    for (int i = 1; i <= cg.players; ++i) {
        Rational br = best_response_values(cg, cp, i)[cg.initial];
        regrets[i - 1] = br - payoffs[i - 1];
    }
    return regrets;
}

std::string VerificationReport::to_text() const {
    std::string out;
    out += "payoffs: " + to_string(payoffs) + "\n";
    out += "regrets: " + to_string(regrets) + "\n";
    out += "maxRegret: " + to_string(max_regret) + "\n";
    out += std::string("isNE: ") + (is_ne ? "yes" : "no") + "\n";
    if (is_spe) out += std::string("isSPE: ") + (*is_spe ? "yes" : "no") + "\n";
    if (demands_met) out += std::string("demandsMet: ") + (*demands_met ? "yes" : "no") + "\n";
    return out;
}

VerificationReport verify_ne(const Game& g, const StationaryProfile& p, const Rational& eps,
                             const PayoffDemand* demand) {
    CompiledGame cg = compile_game(g);
    CompiledProfile cp = compile_profile(cg, p);
    VerificationReport rep;
    rep.payoffs = node_payoffs(cg, cp)[cg.initial];
    rep.regrets.resize(cg.players);
    for (int i = 1; i <= cg.players; ++i) {
        Rational br = best_response_values(cg, cp, i)[cg.initial];
        rep.regrets[i - 1] = br - rep.payoffs[i - 1];
        if (rep.regrets[i - 1] > rep.max_regret) rep.max_regret = rep.regrets[i - 1];
    }
    rep.is_ne = rep.max_regret <= eps;
    if (demand) {
        if (static_cast<int>(demand->values.size()) != g.players)
            throw std::invalid_argument("demand arity mismatch");
        bool met = true;
        for (int i = 0; i < g.players; ++i)
            if (rep.payoffs[i] < demand->values[i]) met = false;
        rep.demands_met = met;
    }
    return rep;
}

VerificationReport verify_spe(const Game& g, const StationaryProfile& p, const Rational& eps) {
    CompiledGame cg = compile_game(g);
    if (!cg.acyclic) throw std::invalid_argument("verify_spe needs an acyclic game");
    CompiledProfile cp = compile_profile(cg, p);
    auto values = node_payoffs(cg, cp);

    VerificationReport rep;
    rep.payoffs = values[cg.initial];
    rep.regrets.assign(cg.players, Rational(0));
    bool spe = true;
    std::vector<std::vector<Rational>> br(cg.players);
    for (int i = 1; i <= cg.players; ++i) br[i - 1] = best_response_values(cg, cp, i);
    for (size_t v = 0; v < cg.nodes.size(); ++v) {
        Rational worst = 0;
        for (int i = 0; i < cg.players; ++i) {
            Rational r = br[i][v] - values[v][i];
            if (r > worst) worst = r;
            if (static_cast<int>(v) == cg.initial) {
                rep.regrets[i] = r;
                if (r > rep.max_regret) rep.max_regret = r;
            }
        }
        rep.per_node_worst[cg.ids[v]] = worst;
        if (worst > eps) spe = false;
    }
    rep.is_ne = rep.max_regret <= eps;
    rep.is_spe = spe;
    return rep;
}

namespace {

// One controlled node of the grid: every distribution on its successors
// with probabilities that are multiples of 1/d.
struct GridNode {
    int node;
    std::vector<std::vector<Rational>> options;
    std::vector<std::vector<double>> options_d;
};

std::vector<std::vector<Rational>> compositions(int d, int parts) {
    std::vector<std::vector<Rational>> out;
    std::vector<int> cur(parts, 0);
    // Lexicographic enumeration of integer compositions of d.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == parts - 1) {
            cur[pos] = left;
            std::vector<Rational> probs;
            probs.reserve(parts);
            for (int c : cur) probs.emplace_back(Rational(c) / d);
            out.push_back(std::move(probs));
            return;
        }
        for (int c = 0; c <= left; ++c) {
            cur[pos] = c;
            self(self, pos + 1, left - c);
        }
    };
    rec(rec, 0, d);
    return out;
}

std::vector<GridNode> grid_nodes(const CompiledGame& cg, int d) {
    std::vector<GridNode> out;
    for (int v : cg.controlled) {
        GridNode gn;
        gn.node = v;
        gn.options = compositions(d, static_cast<int>(cg.nodes[v].succ.size()));
        for (const auto& opt : gn.options) {
            std::vector<double> od;
            od.reserve(opt.size());
            for (const auto& q : opt) od.push_back(to_double(q));
            gn.options_d.push_back(std::move(od));
        }
        out.push_back(std::move(gn));
    }
    return out;
}

long long count_profiles(const std::vector<GridNode>& nodes) {
    long long count = 1;
    for (const auto& gn : nodes) {
        long long opts = static_cast<long long>(gn.options.size());
        if (count > LLONG_MAX / opts) return LLONG_MAX;
        count *= opts;
    }
    return count;
}

void decode(const std::vector<GridNode>& nodes, long long index, std::vector<int>& digits) {
    for (size_t k = nodes.size(); k-- > 0;) {
        long long opts = static_cast<long long>(nodes[k].options.size());
        digits[k] = static_cast<int>(index % opts);
        index /= opts;
    }
}

// Double-precision game image for the screening pass.
struct DoubleGame {
    std::vector<std::vector<double>> probs;    // chance rows
    std::vector<std::vector<double>> rewards;  // terminal rewards
    double tol;
};

DoubleGame make_double_game(const CompiledGame& cg) {
    DoubleGame dg;
    dg.probs.resize(cg.nodes.size());
    dg.rewards.resize(cg.nodes.size());
    double max_abs = 1.0;
    for (size_t v = 0; v < cg.nodes.size(); ++v) {
        for (const auto& q : cg.nodes[v].probs) dg.probs[v].push_back(to_double(q));
        for (const auto& r : cg.nodes[v].reward) {
            double x = to_double(r);
            dg.rewards[v].push_back(x);
            max_abs = std::max(max_abs, std::abs(x));
        }
    }
    // Convex combinations of rewards accumulate at most a few hundred ulps
    // of error at desk scale; 1e-9 per reward unit leaves orders of
    // magnitude of slack while still screening out almost everything.
    dg.tol = 1e-9 * max_abs * static_cast<double>(cg.nodes.size() + 1);
    return dg;
}

// Screening pass: returns false only when the profile certainly fails the
// demand or the regret bound. Never rejects a true solution (tolerances are
// conservative); every accepted candidate is re-verified exactly.
bool screen_double(const CompiledGame& cg, const DoubleGame& dg,
                   const std::vector<GridNode>& nodes, const std::vector<int>& digits,
                   double eps_d, const std::vector<double>* demand_d, std::vector<double>& val,
                   std::vector<double>& buf, std::vector<const std::vector<double>*>& row) {
    for (size_t k = 0; k < nodes.size(); ++k) row[nodes[k].node] = &nodes[k].options_d[digits[k]];
    for (int i = 1; i <= cg.players; ++i) {
        // payoff pass for player i
        for (auto it = cg.topo.rbegin(); it != cg.topo.rend(); ++it) {
            int v = *it;
            const auto& n = cg.nodes[v];
            if (n.owner == Owner::terminal) {
                val[v] = dg.rewards[v][i - 1];
                continue;
            }
            const std::vector<double>& r = n.owner == Owner::chance ? dg.probs[v] : *row[v];
            double acc = 0;
            for (size_t e = 0; e < r.size(); ++e) acc += r[e] * val[n.succ[e]];
            val[v] = acc;
        }
        double payoff = val[cg.initial];
        if (demand_d && payoff < (*demand_d)[i - 1] - dg.tol) return false;
        // best-response pass for player i
        for (auto it = cg.topo.rbegin(); it != cg.topo.rend(); ++it) {
            int v = *it;
            const auto& n = cg.nodes[v];
            if (n.owner == Owner::terminal) {
                buf[v] = dg.rewards[v][i - 1];
                continue;
            }
            if (n.owner == Owner::player && n.player == i) {
                double best = buf[n.succ[0]];
                for (size_t e = 1; e < n.succ.size(); ++e) best = std::max(best, buf[n.succ[e]]);
                buf[v] = best;
                continue;
            }
            const std::vector<double>& r = n.owner == Owner::chance ? dg.probs[v] : *row[v];
            double acc = 0;
            for (size_t e = 0; e < r.size(); ++e) acc += r[e] * buf[n.succ[e]];
            buf[v] = acc;
        }
        if (buf[cg.initial] - payoff > eps_d + dg.tol) return false;
    }
    return true;
}

// Exact acceptance check for one decoded profile.
bool accept_exact(const CompiledGame& cg, const std::vector<GridNode>& nodes,
                  const std::vector<int>& digits, const Rational& eps,
                  const PayoffDemand* demand, CompiledProfile& cp) {
    for (size_t k = 0; k < nodes.size(); ++k) cp.rows[nodes[k].node] = nodes[k].options[digits[k]];
    auto payoffs = node_payoffs(cg, cp)[cg.initial];
    if (demand)
        for (int i = 0; i < cg.players; ++i)
            if (payoffs[i] < demand->values[i]) return false;
    for (int i = 1; i <= cg.players; ++i) {
        Rational br = best_response_values(cg, cp, i)[cg.initial];
        if (br - payoffs[i - 1] > eps) return false;
    }
    return true;
}

StationaryProfile profile_from_digits(const CompiledGame& cg, const std::vector<GridNode>& nodes,
                                      const std::vector<int>& digits) {
    StationaryProfile p;
    for (size_t k = 0; k < nodes.size(); ++k) {
        int v = nodes[k].node;
        const auto& opt = nodes[k].options[digits[k]];
        std::map<std::string, Rational> row;
        for (size_t e = 0; e < opt.size(); ++e)
            if (opt[e] != 0) row[cg.ids[cg.nodes[v].succ[e]]] = opt[e];
        p.choice[cg.ids[v]] = std::move(row);
    }
    return p;
}

}  // namespace

long long grid_profile_count(const Game& g, int resolution) {
    CompiledGame cg = compile_game(g);
    return count_profiles(grid_nodes(cg, resolution));
}

std::vector<StationaryProfile> grid_search_serial(const Game& g, int resolution,
                                                  const Rational& eps, const PayoffDemand* demand,
                                                  const GridOptions& opt) {
    if (resolution < 1) throw std::invalid_argument("grid resolution must be positive");
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("the grid scan needs a terminal-reward game");
    CompiledGame cg = compile_game(g);
    auto nodes = grid_nodes(cg, resolution);
    long long count = count_profiles(nodes);
    if (count > opt.cap) throw GridCapExceeded(count);

    std::vector<StationaryProfile> found;
    std::vector<int> digits(nodes.size(), 0);
    CompiledProfile cp;
    cp.rows.resize(cg.nodes.size());
    for (long long idx = 0; idx < count; ++idx) {
        decode(nodes, idx, digits);
        if (accept_exact(cg, nodes, digits, eps, demand, cp))
            found.push_back(profile_from_digits(cg, nodes, digits));
    }
    return found;
}

std::vector<StationaryProfile> grid_search(const Game& g, int resolution, const Rational& eps,
                                           const PayoffDemand* demand, const GridOptions& opt) {
    if (resolution < 1) throw std::invalid_argument("grid resolution must be positive");
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("the grid scan needs a terminal-reward game");
    CompiledGame cg = compile_game(g);
    if (!cg.acyclic) return grid_search_serial(g, resolution, eps, demand, opt);
    auto nodes = grid_nodes(cg, resolution);
    long long count = count_profiles(nodes);
    if (count > opt.cap) throw GridCapExceeded(count);

    DoubleGame dg = make_double_game(cg);
    double eps_d = to_double(eps);
    std::optional<std::vector<double>> demand_d;
    if (demand) {
        demand_d.emplace();
        for (const auto& r : demand->values) demand_d->push_back(to_double(r));
    }

    const long long chunk = 8192;
    const long long chunks = (count + chunk - 1) / chunk;
    std::vector<std::vector<long long>> hits(chunks);

#ifdef _OPENMP
    int prev_threads = omp_get_max_threads();
    if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
#pragma omp parallel
#endif
    {
        std::vector<int> digits(nodes.size(), 0);
        std::vector<double> val(cg.nodes.size()), buf(cg.nodes.size());
        std::vector<const std::vector<double>*> row(cg.nodes.size(), nullptr);
        CompiledProfile cp;
        cp.rows.resize(cg.nodes.size());
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (long long c = 0; c < chunks; ++c) {
            long long lo = c * chunk, hi = std::min(count, lo + chunk);
            for (long long idx = lo; idx < hi; ++idx) {
                decode(nodes, idx, digits);
                if (!screen_double(cg, dg, nodes, digits, eps_d, demand_d ? &*demand_d : nullptr,
                                   val, buf, row))
                    continue;
                if (accept_exact(cg, nodes, digits, eps, demand, cp)) hits[c].push_back(idx);
            }
        }
    }
#ifdef _OPENMP
    if (opt.jobs > 0) omp_set_num_threads(prev_threads);
#endif

    std::vector<StationaryProfile> found;
    std::vector<int> digits(nodes.size(), 0);
    for (long long c = 0; c < chunks; ++c)
        for (long long idx : hits[c]) {
            decode(nodes, idx, digits);
            found.push_back(profile_from_digits(cg, nodes, digits));
        }
    return found;
}

}  // namespace rgames
