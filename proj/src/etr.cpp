#include "rgames/etr.hpp"

#include "rgames/equilibrium.hpp"

#include <algorithm>
#include <unordered_map>

namespace rgames {

namespace {

struct VarPool {
    Formula* f;
    std::unordered_map<std::string, int> ids;
    int get(const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(f->vars.size());
        f->vars.push_back(name);
        ids[name] = id;
        return id;
    }
};

std::string tau_name(const std::string& node, const std::string& succ) {
    return "tau." + node + "." + succ;
}
std::string u_name(int player, const std::string& node) {
    return "U." + std::to_string(player) + "." + node;
}
std::string b_name(int player, const std::string& node) {
    return "B." + std::to_string(player) + "." + node;
}

Monomial term(const Rational& c, std::initializer_list<int> vars) {
    Monomial m;
    m.coeff = c;
    m.vars = vars;
    std::sort(m.vars.begin(), m.vars.end());
    return m;
}

Atom atom(Polynomial p, Cmp cmp) { return {std::move(p), cmp}; }

Constraint single(Atom a) { return {{std::move(a)}}; }

}  // namespace

int Formula::var(const std::string& name) {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    vars.push_back(name);
    return static_cast<int>(vars.size()) - 1;
}

Formula encode_stationary_ne(const Game& g, const PayoffDemand* demand, bool spe) {
    if (g.objective != Objective::terminal_rewards)
        throw std::invalid_argument("the encoding needs a terminal-reward game");
    if (!is_acyclic(g))
        throw std::invalid_argument(
            "the encoding needs an acyclic game: cyclic values are least fixed points, which "
            "this sentence cannot pin down");
    if (demand && static_cast<int>(demand->values.size()) != g.players)
        throw std::invalid_argument("demand arity mismatch");

    Formula f;
    VarPool pool{&f, {}};

    // (a) simplex rows
    for (const auto& n : g.nodes) {
        if (n.owner != Owner::player) continue;
        Polynomial sum;
        for (const auto& s : n.succ) {
            int t = pool.get(tau_name(n.id, s));
            f.constraints.push_back(single(atom({{term(1, {t})}}, Cmp::ge)));
            sum.terms.push_back(term(1, {t}));
        }
        sum.terms.push_back(term(-1, {}));
        f.constraints.push_back(single(atom(std::move(sum), Cmp::eq)));
    }

    // (b) value flow
    for (const auto& n : g.nodes) {
        for (int i = 1; i <= g.players; ++i) {
            int u = pool.get(u_name(i, n.id));
            Polynomial p;
            p.terms.push_back(term(1, {u}));
            switch (n.owner) {
                case Owner::terminal:
                    p.terms.push_back(term(-n.reward[i - 1], {}));
                    break;
                case Owner::chance:
                    for (size_t e = 0; e < n.succ.size(); ++e)
                        p.terms.push_back(term(-n.probs[e], {pool.get(u_name(i, n.succ[e]))}));
                    break;
                case Owner::player:
                    for (const auto& s : n.succ)
                        p.terms.push_back(
                            term(-1, {pool.get(tau_name(n.id, s)), pool.get(u_name(i, s))}));
                    break;
            }
            f.constraints.push_back(single(atom(std::move(p), Cmp::eq)));
        }
    }

    // (c) best-response flow
    for (const auto& n : g.nodes) {
        for (int i = 1; i <= g.players; ++i) {
            int b = pool.get(b_name(i, n.id));
            if (n.owner == Owner::player && n.player == i) {
                Constraint any_tight;
                for (const auto& s : n.succ) {
                    int bs = pool.get(b_name(i, s));
                    f.constraints.push_back(
                        single(atom({{term(1, {b}), term(-1, {bs})}}, Cmp::ge)));
                    any_tight.disjuncts.push_back(atom({{term(1, {b}), term(-1, {bs})}}, Cmp::eq));
                }
                f.constraints.push_back(std::move(any_tight));
                continue;
            }
            Polynomial p;
            p.terms.push_back(term(1, {b}));
            switch (n.owner) {
                case Owner::terminal:
                    p.terms.push_back(term(-n.reward[i - 1], {}));
                    break;
                case Owner::chance:
                    for (size_t e = 0; e < n.succ.size(); ++e)
                        p.terms.push_back(term(-n.probs[e], {pool.get(b_name(i, n.succ[e]))}));
                    break;
                case Owner::player:  // owned by j != i
                    for (const auto& s : n.succ)
                        p.terms.push_back(
                            term(-1, {pool.get(tau_name(n.id, s)), pool.get(b_name(i, s))}));
                    break;
            }
            f.constraints.push_back(single(atom(std::move(p), Cmp::eq)));
        }
    }

    // (d) equilibrium at the root
    for (int i = 1; i <= g.players; ++i)
        f.constraints.push_back(single(atom(
            {{term(1, {pool.get(u_name(i, g.initial))}), term(-1, {pool.get(b_name(i, g.initial))})}},
            Cmp::ge)));

    // (e) equilibrium at every node: supported choices are maximizers
    if (spe) {
        for (const auto& n : g.nodes) {
            if (n.owner != Owner::player) continue;
            int i = n.player;
            for (const auto& s : n.succ) {
                int t = pool.get(tau_name(n.id, s));
                int bv = pool.get(b_name(i, n.id));
                int bw = pool.get(b_name(i, s));
                f.constraints.push_back(
                    single(atom({{term(1, {t, bv}), term(-1, {t, bw})}}, Cmp::eq)));
            }
        }
    }

    // (f) payoff demand, one separate clause per player, appended last
    if (demand) {
        for (int i = 1; i <= g.players; ++i)
            f.constraints.push_back(single(atom(
                {{term(1, {pool.get(u_name(i, g.initial))}), term(-demand->values[i - 1], {})}},
                Cmp::ge)));
    }
    return f;
}

bool check_assignment(const Formula& f, const std::map<std::string, Rational>& assignment) {
    std::vector<Rational> values(f.vars.size());
    for (size_t i = 0; i < f.vars.size(); ++i) {
        auto it = assignment.find(f.vars[i]);
        if (it == assignment.end())
            throw std::invalid_argument("assignment misses variable " + f.vars[i]);
        values[i] = it->second;
    }
    for (const auto& c : f.constraints) {
        bool ok = false;
        for (const auto& a : c.disjuncts) {
            Rational acc = 0;
            for (const auto& t : a.poly.terms) {
                Rational v = t.coeff;
                for (int var : t.vars) v *= values[var];
                acc += v;
            }
            if (a.cmp == Cmp::eq ? acc == 0 : acc >= 0) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

std::map<std::string, Rational> assignment_from_profile(const Game& g,
                                                        const StationaryProfile& p) {
    CompiledGame cg = compile_game(g);
    if (!cg.acyclic) throw std::invalid_argument("assignment needs an acyclic game");
    CompiledProfile cp = compile_profile(cg, p);
    auto values = node_payoffs(cg, cp);
    std::map<std::string, Rational> out;
    for (size_t v = 0; v < cg.nodes.size(); ++v) {
        const auto& n = cg.nodes[v];
        if (n.owner == Owner::player)
            for (size_t e = 0; e < n.succ.size(); ++e)
                out[tau_name(cg.ids[v], cg.ids[n.succ[e]])] = cp.rows[v][e];
        for (int i = 1; i <= cg.players; ++i) out[u_name(i, cg.ids[v])] = values[v][i - 1];
    }
    for (int i = 1; i <= cg.players; ++i) {
        auto br = best_response_values(cg, cp, i);
        for (size_t v = 0; v < cg.nodes.size(); ++v) out[b_name(i, cg.ids[v])] = br[v];
    }
    return out;
}

namespace {

std::string smt_rational(const Rational& r) {
    bool neg = r < 0;
    Rational a = neg ? Rational(-r) : r;
    std::string core = denominator(a) == 1
                           ? numerator(a).convert_to<std::string>() + ".0"
                           : "(/ " + numerator(a).convert_to<std::string>() + ".0 " +
                                 denominator(a).convert_to<std::string>() + ".0)";
    return neg ? "(- " + core + ")" : core;
}

std::string smt_poly(const Formula& f, const Polynomial& p) {
    if (p.terms.empty()) return "0.0";
    std::vector<std::string> parts;
    for (const auto& t : p.terms) {
        std::string factor = smt_rational(t.coeff);
        std::string prod = factor;
        for (int v : t.vars) prod = "(* " + prod + " |" + f.vars[v] + "|)";
        parts.push_back(prod);
    }
    if (parts.size() == 1) return parts[0];
    std::string out = "(+";
    for (const auto& s : parts) out += " " + s;
    return out + ")";
}

std::string smt_atom(const Formula& f, const Atom& a) {
    return std::string("(") + (a.cmp == Cmp::eq ? "=" : ">=") + " " + smt_poly(f, a.poly) +
           " 0.0)";
}

}  // namespace

std::string to_smt2(const Formula& f) {
    std::string out;
    out += "(set-logic QF_NRA)\n";
    for (const auto& v : f.vars) out += "(declare-const |" + v + "| Real)\n";
    for (const auto& c : f.constraints) {
        if (c.disjuncts.size() == 1) {
            out += "(assert " + smt_atom(f, c.disjuncts[0]) + ")\n";
        } else {
            out += "(assert (or";
            for (const auto& a : c.disjuncts) out += " " + smt_atom(f, a);
            out += "))\n";
        }
    }
    out += "(check-sat)\n";
    return out;
}

std::string to_sexpr(const Formula& f) {
    auto poly = [&](const Polynomial& p) {
        std::string out = "(+";
        for (const auto& t : p.terms) {
            out += " (* " + to_string(t.coeff);
            for (int v : t.vars) out += " " + f.vars[v];
            out += ")";
        }
        return out + ")";
    };
    std::string out = "(and\n";
    for (const auto& c : f.constraints) {
        std::string body;
        for (const auto& a : c.disjuncts) {
            std::string cmp = a.cmp == Cmp::eq ? "=" : ">=";
            body += (body.empty() ? "" : " ") + ("(" + cmp + " " + poly(a.poly) + " 0)");
        }
        out += c.disjuncts.size() == 1 ? "  " + body + "\n" : "  (or " + body + ")\n";
    }
    return out + ")\n";
}

}  // namespace rgames
