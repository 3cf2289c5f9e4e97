#include "rgames/derandomize.hpp"

#include "rgames/detail/reduction_body.hpp"

#include <algorithm>
#include <set>

namespace rgames {

ChanceWeights chance_weights(const std::vector<Rational>& p) {
    Rational total = 0;
    for (const auto& v : p) {
        if (v < 0) throw std::invalid_argument("chance_weights: negative component");
        total += v;
    }
    if (total >= 1) throw std::invalid_argument("chance_weights: mass must sum below 1");
    size_t n = p.size();
    ChanceWeights w;
    w.q.resize(n);
    w.q_hat.resize(n);
    Rational tail = 0;  // sum_{j > i} p_j, built from the back
    for (size_t i = n; i-- > 0;) {
        Rational with = tail + p[i];
        w.q[i] = (1 - with) / (1 - tail);
        tail = with;
    }
    Rational prod = 1;
    for (size_t i = 0; i < n; ++i) {
        prod *= w.q[i];
        w.q_hat[i] = prod;
    }
    return w;
}

namespace {

Node terminal_node(std::string id, std::vector<Rational> rewards) {
    Node t;
    t.id = std::move(id);
    t.owner = Owner::terminal;
    t.reward = std::move(rewards);
    return t;
}

Node player_node(std::string id, int player, std::vector<std::string> succ) {
    Node n;
    n.id = std::move(id);
    n.owner = Owner::player;
    n.player = player;
    n.succ = std::move(succ);
    return n;
}

}  // namespace

ChanceGadgetInfo append_chance_chain(Game& g, const ChainSpec& spec) {
    if (spec.p.size() != spec.continuations.size())
        throw std::invalid_argument("chain spec: one continuation per outcome");
    if (spec.p.empty()) throw std::invalid_argument("chain spec: empty outcome list");
    ChanceWeights w = chance_weights(spec.p);
    int m = g.players;
    int N = static_cast<int>(spec.p.size());

    ChanceGadgetInfo info;
    info.p1 = spec.p1;
    info.p2 = spec.p2;
    info.p3 = spec.p3;
    info.q = w.q;
    info.bottom = spec.prefix + "bot";
    info.s_nodes.resize(N);
    info.r_nodes.resize(N);
    info.t_nodes.resize(N);

    auto name = [&](const char* kind, int i) {
        return spec.prefix + kind + std::to_string(i);
    };
    for (int i = N; i >= 1; --i) {
        std::string s = name("s", i), r = name("r", i), t = name("t", i);
        info.s_nodes[i - 1] = s;
        info.r_nodes[i - 1] = r;
        info.t_nodes[i - 1] = t;
        std::vector<Rational> s_exit(m, Rational(0)), r_exit(m, Rational(0));
        s_exit[spec.p2 - 1] = 1 - w.q_hat[i - 1];
        r_exit[spec.p3 - 1] = w.q_hat[i - 1];
        g.add_node(player_node(s, spec.p2, {r, s + ".exit"}));
        g.add_node(terminal_node(s + ".exit", std::move(s_exit)));
        g.add_node(player_node(r, spec.p3, {t, r + ".exit"}));
        g.add_node(terminal_node(r + ".exit", std::move(r_exit)));
        std::string next = i > 1 ? name("s", i - 1) : info.bottom;
        g.add_node(player_node(t, spec.p1, {spec.continuations[i - 1], next}));
    }
    g.add_node(terminal_node(info.bottom, spec.bottom_rewards));
    return info;
}

Game chain_test_game(const std::vector<Rational>& p, ChanceGadgetInfo* info) {
    if (p.empty()) throw std::invalid_argument("the chain test game needs at least one outcome");
    Game g;
    g.players = 3;
    std::vector<std::string> conts;
    for (size_t i = 1; i <= p.size(); ++i) {
        std::string u = "u" + std::to_string(i);
        g.add_node(terminal_node(u, {1, 1, 0}));
        conts.push_back(u);
    }
    ChainSpec spec{p, conts, 1, 2, 3, {1, 0, 1}, ""};
    ChanceGadgetInfo local = append_chance_chain(g, spec);
    g.initial = local.s_nodes.back();
    if (info) *info = std::move(local);
    return g;
}

StationaryProfile lift_profile(const EliminationResult& res, const StationaryProfile& p) {
    StationaryProfile out = chain_profile(res.game, res.gadgets);
    for (const auto& [node, row] : p.choice) {
        std::map<std::string, Rational> mapped;
        for (const auto& [succ, prob] : row) {
            auto it = res.renamed.find(succ);
            mapped[it == res.renamed.end() ? succ : it->second] = prob;
        }
        out.choice[node] = std::move(mapped);
    }
    return out;
}

StationaryProfile chain_profile(const Game& g, const std::vector<ChanceGadgetInfo>& gadgets) {
    StationaryProfile p;
    for (const auto& gadget : gadgets) {
        for (const auto& id : gadget.s_nodes) {
            const Node* n = g.find(id);
            p.choice[id] = {{n->succ[0], Rational(1)}};
        }
        for (const auto& id : gadget.r_nodes) {
            const Node* n = g.find(id);
            p.choice[id] = {{n->succ[0], Rational(1)}};
        }
        for (size_t i = 0; i < gadget.t_nodes.size(); ++i) {
            const Node* n = g.find(gadget.t_nodes[i]);
            std::map<std::string, Rational> row;
            Rational pick = 1 - gadget.q[i];
            if (pick != 0) row[n->succ[0]] = pick;
            if (gadget.q[i] != 0) row[n->succ[1]] = gadget.q[i];
            p.choice[gadget.t_nodes[i]] = std::move(row);
        }
    }
    return p;
}

namespace {

struct GadgetGroup {
    std::vector<std::string> chance_nodes;
    int p1, p2, p3;
    // Traversal of the continuation region stops at these nodes; empty for
    // the plain reachability region.
    std::set<std::string> boundaries;
};

EliminationResult eliminate_grouped(const Game& g, const Rational& scale,
                                    const std::vector<GadgetGroup>& groups, int out_players) {
    if (scale <= 0 || scale >= 1)
        throw std::invalid_argument("elimination scale must be in (0,1)");
    if (!is_acyclic(g)) throw std::invalid_argument("chance elimination needs an acyclic game");

    std::map<std::string, const GadgetGroup*> group_of;
    for (const auto& grp : groups)
        for (const auto& id : grp.chance_nodes) {
            const Node* n = g.find(id);
            if (n == nullptr || n->owner != Owner::chance)
                throw std::invalid_argument("not a chance node: " + id);
            group_of[id] = &grp;
        }

    // Every replaced chance node is entered through its chain's first node.
    std::map<std::string, std::string> remap;
    for (const auto& [id, grp] : group_of) {
        size_t outcomes = g.find(id)->succ.size();
        remap[id] = id + ".sim.s" + std::to_string(outcomes);
    }
    auto target = [&](const std::string& id) {
        auto it = remap.find(id);
        return it == remap.end() ? id : it->second;
    };

    Game out;
    out.players = out_players;
    out.initial = target(g.initial);
    std::vector<ChanceGadgetInfo> infos;
    std::map<const GadgetGroup*, std::vector<std::string>> continuations_of;

    for (const auto& node : g.nodes) {
        auto git = group_of.find(node.id);
        if (git == group_of.end()) {
            Node c = node;
            for (auto& s : c.succ) s = target(s);
            if (c.owner == Owner::terminal) c.reward.resize(out_players, Rational(0));
            out.add_node(std::move(c));
            continue;
        }
        const GadgetGroup& grp = *git->second;
        ChainSpec spec;
        for (const auto& prob : node.probs) spec.p.push_back(scale * prob);
        for (const auto& s : node.succ) {
            spec.continuations.push_back(target(s));
            continuations_of[&grp].push_back(target(s));
        }
        spec.p1 = grp.p1;
        spec.p2 = grp.p2;
        spec.p3 = grp.p3;
        spec.bottom_rewards.assign(out_players, Rational(0));
        spec.bottom_rewards[grp.p1 - 1] = 1;
        spec.bottom_rewards[grp.p3 - 1] = 1;
        spec.prefix = node.id + ".sim.";
        infos.push_back(append_chance_chain(out, spec));
    }

    // Region rewards: the chooser and the first threatener of a group are
    // paid 1 at every terminal reachable from the group's continuations
    // (stopping at declared boundary nodes), which makes the chain's threat
    // comparisons exact equalities under the q-profile.
    for (const auto& grp : groups) {
        std::set<std::string> seen;
        std::vector<std::string> queue = continuations_of[&grp];
        for (const auto& id : queue) seen.insert(id);
        while (!queue.empty()) {
            std::string id = queue.back();
            queue.pop_back();
            if (grp.boundaries.count(id)) continue;
            const Node* n = out.find(id);
            if (n->owner == Owner::terminal) {
                Node* t = out.find(id);
                t->reward[grp.p1 - 1] = 1;
                t->reward[grp.p2 - 1] = 1;
                continue;
            }
            for (const auto& s : n->succ)
                if (seen.insert(s).second) queue.push_back(s);
        }
    }
    return {std::move(out), std::move(infos), std::move(remap)};
}

}  // namespace

EliminationResult eliminate_chance_nodes(const Game& g, const Rational& scale,
                                         Grouping grouping) {
    std::vector<std::string> chance;
    for (const auto& n : g.nodes)
        if (n.owner == Owner::chance) chance.push_back(n.id);
    if (chance.empty()) {
        EliminationResult res{g, {}, {}};
        return res;
    }
    std::vector<GadgetGroup> groups;
    if (grouping == Grouping::per_node) {
        int next = g.players + 1;
        for (const auto& id : chance) {
            groups.push_back({{id}, next, next + 1, next + 2, {}});
            next += 3;
        }
    } else {
        // Sharing one triple is sound only when no chain can sit inside
        // another's continuation region.
        for (const auto& from : chance) {
            std::set<std::string> seen{from};
            std::vector<std::string> queue{from};
            while (!queue.empty()) {
                std::string id = queue.back();
                queue.pop_back();
                const Node* n = g.find(id);
                for (const auto& s : n->succ) {
                    if (!seen.insert(s).second) continue;
                    if (s != from && g.find(s)->owner == Owner::chance)
                        throw std::invalid_argument(
                            "shared grouping needs independent chance nodes: " + s +
                            " is reachable from " + from);
                    queue.push_back(s);
                }
            }
        }
        groups.push_back({chance, g.players + 1, g.players + 2, g.players + 3, {}});
    }
    return eliminate_grouped(g, scale, groups,
                             g.players + 3 * static_cast<int>(groups.size()));
}

ReductionOutput build_deterministic_full_game(const PolySystem& s) {
    detail::check_reduction_input(s);
    ReductionOutput out;
    out.n = s.n;
    out.ell = static_cast<int>(s.polys.size());
    out.variant = ReductionVariant::deterministic13;

    NodeIndex idx;
    // Merged-root body with the reduced threat payoff 1/(4 n^2).
    Game merged = detail::build_reduction_body(s, 7, Rational(1) / (4 * s.n * s.n), true, idx);

    std::set<std::string> v_boundaries;
    for (int i = 1; i <= s.n; ++i) v_boundaries.insert(idx.at("v." + std::to_string(i)));
    std::vector<std::string> poly_chances;
    for (int k = 1; k <= out.ell; ++k)
        poly_chances.push_back(idx.at("poly" + std::to_string(k) + ".chance"));

    std::vector<GadgetGroup> groups;
    groups.push_back({poly_chances, 11, 12, 13, v_boundaries});
    groups.push_back({{"root"}, 8, 9, 10, {}});
    EliminationResult res = eliminate_grouped(merged, Rational(1, 2), groups, 13);

    out.game = std::move(res.game);
    out.gadgets = std::move(res.gadgets);
    out.index = std::move(idx);
    out.demand = demand_vector(out.n, out.ell, DemandVariant::deterministic13);
    out.demand_reduced = out.demand;
    return out;
}

std::pair<Game, PayoffDemand> build_partition_game(const std::vector<Rational>& items,
                                                   bool paper_demand) {
    if (items.empty()) throw std::invalid_argument("partition needs at least one item");
    for (const auto& a : items)
        if (a <= 0) throw std::invalid_argument("item values must be positive");
    int n = static_cast<int>(items.size());
    Game g;
    g.players = 2;
    std::vector<std::string> succ;
    std::vector<Rational> probs;
    for (int i = 1; i <= n; ++i) {
        succ.push_back("part.u" + std::to_string(i));
        probs.emplace_back(Rational(1) / n);
    }
    g.add_node({/*id=*/"part.root", Owner::chance, 0, std::move(succ), std::move(probs), {}});
    for (int i = 1; i <= n; ++i) {
        std::string u = "part.u" + std::to_string(i);
        std::string d = "part.d" + std::to_string(i);
        g.add_node(player_node(u, 1, {u + ".give", d}));
        g.add_node(terminal_node(u + ".give", {0, items[i - 1]}));
        g.add_node(player_node(d, 2, {d + ".give", d + ".drop"}));
        g.add_node(terminal_node(d + ".give", {items[i - 1], 0}));
        g.add_node(terminal_node(d + ".drop", {0, 0}));
    }
    g.initial = "part.root";
    Rational total = 0;
    for (const auto& a : items) total += a;
    Rational each = paper_demand ? total / 2 : total / (2 * n);
    return {std::move(g), PayoffDemand{{each, each}}};
}

PartitionOutput derandomize_partition(const std::vector<Rational>& items, bool paper_demand) {
    auto [base, demand] = build_partition_game(items, paper_demand);
    std::vector<GadgetGroup> groups;
    groups.push_back({{"part.root"}, 3, 4, 5, {}});
    EliminationResult res = eliminate_grouped(base, Rational(1, 2), groups, 5);
    PartitionOutput out;
    out.game = std::move(res.game);
    out.gadgets = std::move(res.gadgets);
    out.demand.values = {demand.values[0] / 2, demand.values[1] / 2, 1, 0, 0};
    return out;
}

Game rewards_to_cycles(const Game& g) {
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("rewards_to_cycles needs a terminal-reward game");
    for (const auto& n : g.nodes)
        if (n.owner == Owner::terminal)
            for (const auto& r : n.reward)
                if (r < 0 || r > 1)
                    throw std::invalid_argument("rewards_to_cycles needs rewards in [0,1]");
    Game out;
    out.players = g.players;
    out.objective = Objective::mean_payoff;
    out.initial = g.initial;
    for (const auto& n : g.nodes) {
        if (n.owner != Owner::terminal) {
            out.add_node(n);
            continue;
        }
        Integer d = 1;
        for (const auto& r : n.reward) d = boost::multiprecision::lcm(d, denominator(r));
        long long len = d.convert_to<long long>();
        auto cycle_id = [&](long long k) {
            return k == 0 ? n.id : n.id + ".c" + std::to_string(k);
        };
        for (long long k = 0; k < len; ++k) {
            out.add_node(player_node(cycle_id(k), 1, {cycle_id((k + 1) % len)}));
            std::vector<Rational> reward(g.players, Rational(0));
            bool any = false;
            for (int i = 0; i < g.players; ++i) {
                // Player i is paid on the first r_i * D nodes of the cycle.
                Rational ones = n.reward[i] * len;
                if (Rational(k) < ones) {
                    reward[i] = 1;
                    any = true;
                }
            }
            if (any) out.node_rewards[cycle_id(k)] = std::move(reward);
        }
    }
    return out;
}

}  // namespace rgames
