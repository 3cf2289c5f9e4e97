#include "rgames/reductions.hpp"

#include "rgames/derandomize.hpp"
#include "rgames/detail/reduction_body.hpp"

#include <algorithm>
#include <sstream>

namespace rgames {

Rational eval_poly(const Poly& p, const std::vector<Rational>& x) {
    size_t n = x.size();
    Rational acc = p.constant;
    for (size_t i = 0; i < n && i < p.quad.size(); ++i)
        for (size_t j = 0; j < n && j < p.quad[i].size(); ++j)
            if (p.quad[i][j] != 0) acc += p.quad[i][j] * x[i] * x[j];
    for (size_t i = 0; i < n && i < p.lin.size(); ++i)
        if (p.lin[i] != 0) acc += p.lin[i] * x[i];
    return acc;
}

namespace {

Poly empty_poly(int n) {
    Poly p;
    p.quad.assign(n, std::vector<Rational>(n, Rational(0)));
    return p;
}

}  // namespace

PolySystem parse_poly_system(const std::string& text) {
    PolySystem s;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    Poly* current = nullptr;
    bool have_vars = false;
    while (std::getline(in, raw)) {
        ++no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string first;
        if (!(line >> first)) continue;
        if (first == "vars:") {
            if (!(line >> s.n) || s.n < 1) throw ParseError(no, 0, "vars: expects a positive integer");
            have_vars = true;
        } else if (first == "homogeneous:") {
            std::string v;
            line >> v;
            if (v != "yes" && v != "no") throw ParseError(no, 0, "homogeneous: expects yes or no");
            s.homogeneous = v == "yes";
        } else if (first == "poly") {
            if (!have_vars) throw ParseError(no, 0, "vars: must come before poly blocks");
            s.polys.push_back(empty_poly(s.n));
            current = &s.polys.back();
        } else if (first == "quad" || first == "lin" || first == "const") {
            if (!current) throw ParseError(no, 0, first + " outside a poly block");
            if (first == "quad") {
                int i, j;
                std::string val;
                if (!(line >> i >> j >> val) || i < 1 || j < 1 || i > s.n || j > s.n)
                    throw ParseError(no, 0, "quad expects: quad i j coeff");
                current->quad[i - 1][j - 1] = parse_rational(val);
            } else if (first == "lin") {
                int i;
                std::string val;
                if (!(line >> i >> val) || i < 1 || i > s.n)
                    throw ParseError(no, 0, "lin expects: lin i coeff");
                if (current->lin.empty()) current->lin.assign(s.n, Rational(0));
                current->lin[i - 1] = parse_rational(val);
            } else {
                std::string val;
                if (!(line >> val)) throw ParseError(no, 0, "const expects a coefficient");
                current->constant = parse_rational(val);
            }
        } else {
            throw ParseError(no, 0, "unknown directive '" + first + "'");
        }
    }
    if (!have_vars) throw ParseError(0, 0, "missing vars: header");
    if (s.homogeneous)
        for (const auto& p : s.polys) {
            for (const auto& l : p.lin)
                if (l != 0) throw ParseError(0, 0, "homogeneous system has a linear term");
            if (p.constant != 0) throw ParseError(0, 0, "homogeneous system has a constant term");
        }
    return s;
}

std::string serialize_poly_system(const PolySystem& s) {
    std::string out;
    out += "vars: " + std::to_string(s.n) + "\n";
    out += std::string("homogeneous: ") + (s.homogeneous ? "yes" : "no") + "\n";
    for (size_t k = 0; k < s.polys.size(); ++k) {
        out += "poly " + std::to_string(k + 1) + ":\n";
        const Poly& p = s.polys[k];
        for (int i = 0; i < s.n; ++i)
            for (int j = 0; j < s.n; ++j)
                if (p.quad[i][j] != 0)
                    out += "quad " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
                           to_string(p.quad[i][j]) + "\n";
        for (size_t i = 0; i < p.lin.size(); ++i)
            if (p.lin[i] != 0)
                out += "lin " + std::to_string(i + 1) + " " + to_string(p.lin[i]) + "\n";
        if (p.constant != 0) out += "const " + to_string(p.constant) + "\n";
    }
    return out;
}

PolySystem homogenize(const PolySystem& s) {
    PolySystem out;
    out.n = s.n + 1;
    out.homogeneous = true;
    for (const Poly& p : s.polys) {
        Poly q = empty_poly(out.n);
        for (int i = 0; i < s.n; ++i)
            for (int j = 0; j < s.n; ++j) q.quad[i][j] = p.quad[i][j];
        for (int i = 0; i < static_cast<int>(p.lin.size()); ++i)
            for (int j = 0; j < out.n; ++j) q.quad[i][j] += p.lin[i];
        for (int i = 0; i < out.n; ++i)
            for (int j = 0; j < out.n; ++j) q.quad[i][j] += p.constant;
        out.polys.push_back(std::move(q));
    }
    return out;
}

PolySystem scale_coefficients(const PolySystem& s) {
    PolySystem out = s;
    for (Poly& p : out.polys) {
        Rational mx = 1;
        for (const auto& row : p.quad)
            for (const auto& a : row) {
                Rational abs = a < 0 ? Rational(-a) : a;
                if (abs > mx) mx = abs;
            }
        if (mx == 1) continue;
        for (auto& row : p.quad)
            for (auto& a : row) a /= mx;
        for (auto& l : p.lin) l /= mx;
        p.constant /= mx;
    }
    return out;
}

SimplexPoint make_unit_simplex_point(std::vector<Rational> x) {
    Rational sum = 0;
    for (const auto& v : x) {
        if (v < 0) throw std::invalid_argument("simplex point has a negative coordinate");
        sum += v;
    }
    if (sum != 1) throw std::invalid_argument("unit simplex point sums to " + to_string(sum));
    return {std::move(x), true};
}

SimplexPoint make_corner_simplex_point(std::vector<Rational> x) {
    Rational sum = 0;
    for (const auto& v : x) {
        if (v < 0) throw std::invalid_argument("simplex point has a negative coordinate");
        sum += v;
    }
    if (sum > 1) throw std::invalid_argument("corner simplex point sums to " + to_string(sum));
    return {std::move(x), false};
}

const std::string& NodeIndex::at(const std::string& role) const {
    auto it = roles.find(role);
    if (it == roles.end()) throw std::out_of_range("node index has no role '" + role + "'");
    return it->second;
}

namespace {

std::vector<Rational> unit_rewards(int m, std::initializer_list<int> players) {
    std::vector<Rational> r(m, Rational(0));
    for (int p : players) r[p - 1] = 1;
    return r;
}

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

Node chance_node(std::string id, std::vector<std::string> succ, std::vector<Rational> probs) {
    Node n;
    n.id = std::move(id);
    n.owner = Owner::chance;
    n.succ = std::move(succ);
    n.probs = std::move(probs);
    return n;
}

// The shared v-nodes with their two terminals; used by every build.
void append_var_nodes(Game& g, int n, int m, NodeIndex& idx) {
    for (int i = 1; i <= n; ++i) {
        std::string v = "var.v" + std::to_string(i);
        std::string a = v + ".p24";
        std::string b = v + ".p35";
        g.add_node(player_node(v, 1, {a, b}));
        g.add_node(terminal_node(a, unit_rewards(m, {2, 4})));
        g.add_node(terminal_node(b, unit_rewards(m, {3, 5})));
        idx.roles["v." + std::to_string(i)] = v;
    }
}

}  // namespace

Game build_var_game(int n, int m, NodeIndex* idx) {
    if (n < 1) throw std::invalid_argument("variable count must be positive");
    if (m < 5) throw std::invalid_argument("the variable block needs at least 5 players");
    Game g;
    g.players = m;
    NodeIndex local;
    std::vector<std::string> succ;
    std::vector<Rational> probs;
    for (int i = 1; i <= n; ++i) {
        succ.push_back("var.v" + std::to_string(i));
        probs.emplace_back(Rational(1) / n);
    }
    g.add_node(chance_node("var.root", std::move(succ), std::move(probs)));
    local.roles["var.root"] = "var.root";
    append_var_nodes(g, n, m, local);
    g.initial = "var.root";
    if (idx) *idx = std::move(local);
    return g;
}

void append_mul_fragment(Game& g, const std::string& prefix, int i, int j, const Rational& alpha,
                         const NodeIndex& var_index, NodeIndex* idx) {
    if (alpha < 0 || alpha > 1) throw std::invalid_argument("alpha out of [0,1]");
    int m = g.players;
    const std::string& vi = var_index.at("v." + std::to_string(i));
    const std::string& vj = var_index.at("v." + std::to_string(j));
    std::string w1 = prefix + "w1", w2 = prefix + "w2", w3 = prefix + "w3";
    std::string w4 = prefix + "w4", w5 = prefix + "w5", w6 = prefix + "w6";
    std::string exit3 = w3 + ".exit", a6 = w6 + ".a", b6 = w6 + ".b";

    // Continue edge first, threat/exit edge second, at every chain node.
    g.add_node(player_node(w1, 2, {w2, vi}));
    g.add_node(player_node(w2, 3, {w3, vi}));
    g.add_node(player_node(w3, 1, {w4, exit3}));
    g.add_node(terminal_node(exit3, unit_rewards(m, {1, 3})));
    g.add_node(player_node(w4, 4, {w5, vj}));
    g.add_node(player_node(w5, 5, {w6, vj}));
    g.add_node(player_node(w6, 1, {a6, b6}));
    std::vector<Rational> ra = unit_rewards(m, {1, 2, 4});
    ra[5] = alpha;
    ra[6] = 1 - alpha;
    g.add_node(terminal_node(a6, std::move(ra)));
    g.add_node(terminal_node(b6, unit_rewards(m, {1, 2, 5})));
    if (idx)
        for (const auto* w : {&w1, &w2, &w3, &w4, &w5, &w6})
            idx->roles[prefix + (*w).substr((*w).size() - 2)] = *w;
}

void append_poly_fragment(Game& g, int k, const Poly& poly, int n, const Rational& threat_value,
                          const NodeIndex& var_index, NodeIndex* idx) {
    int m = g.players;
    std::string base = "poly" + std::to_string(k) + ".";
    std::string g6 = base + "g6", g7 = base + "g7", ch = base + "chance";
    std::vector<Rational> r6(m, Rational(0)), r7(m, Rational(0));
    r6[5] = threat_value;
    r7[6] = threat_value;

    g.add_node(player_node(g6, 6, {g7, g6 + ".exit"}));
    g.add_node(terminal_node(g6 + ".exit", std::move(r6)));
    g.add_node(player_node(g7, 7, {ch, g7 + ".exit"}));
    g.add_node(terminal_node(g7 + ".exit", std::move(r7)));

    std::vector<std::string> succ;
    std::vector<Rational> probs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const Rational& a = poly.quad[i - 1][j - 1];
            if (a < -1 || a > 1)
                throw std::invalid_argument("coefficient out of [-1,1]; scale the system first");
            std::string prefix =
                base + "mul." + std::to_string(i) + "." + std::to_string(j) + ".";
            append_mul_fragment(g, prefix, i, j, (1 + a) / 2, var_index, idx);
            succ.push_back(prefix + "w1");
            probs.emplace_back(Rational(1) / (n * n));
        }
    g.add_node(chance_node(ch, std::move(succ), std::move(probs)));
    if (idx) {
        idx->roles[base + "g6"] = g6;
        idx->roles[base + "g7"] = g7;
        idx->roles[base + "chance"] = ch;
    }
}

Game build_mul_game(int n, int i, int j, const Rational& alpha, NodeIndex* idx) {
    Game g;
    g.players = 7;
    NodeIndex local;
    append_var_nodes(g, n, 7, local);
    append_mul_fragment(g, "mul.", i, j, alpha, local, &local);
    g.initial = "mul.w1";
    if (idx) *idx = std::move(local);
    return g;
}

Game build_poly_game(int k, const PolySystem& s, const Rational& threat_value, NodeIndex* idx) {
    if (!s.homogeneous) throw std::invalid_argument("polynomial block needs a homogeneous system");
    if (k < 1 || k > static_cast<int>(s.polys.size()))
        throw std::invalid_argument("polynomial index out of range");
    Game g;
    g.players = 7;
    NodeIndex local;
    append_var_nodes(g, s.n, 7, local);
    append_poly_fragment(g, k, s.polys[k - 1], s.n, threat_value, local, &local);
    g.initial = "poly" + std::to_string(k) + ".g6";
    if (idx) *idx = std::move(local);
    return g;
}

PayoffDemand demand_vector(int n, int ell, DemandVariant variant) {
    if (n < 1 || ell < 1) throw std::invalid_argument("demand_vector needs n, ell >= 1");
    Rational nn = Rational(n);
    switch (variant) {
        case DemandVariant::full:
            return {{Rational(1, 2), 1 / nn, 1 - 1 / nn, (1 + nn) / (2 * nn * nn),
                     (nn * nn - 1) / (2 * nn * nn), Rational(1) / (4 * nn * nn),
                     Rational(1) / (4 * nn * nn)}};
        case DemandVariant::reduced:
            return {{Rational(1, 2), 1 / nn, (nn - 1) / nn, 0, 0, 0, 0}};
        case DemandVariant::deterministic13:
            return {{Rational(1, 8), Rational(3) / (8 * nn), Rational(3, 8) * (1 - 1 / nn), 0, 0, 0,
                     0, 1, 0, 0, Rational(1, 4), 0, 0}};
        case DemandVariant::sure8:
            return {{0, 0, 0, 0, 0, 0, 0, 1}};
    }
    throw std::invalid_argument("unknown demand variant");
}

namespace detail {

void check_reduction_input(const PolySystem& s) {
    if (!s.homogeneous) throw std::invalid_argument("reduction input must be homogeneous");
    if (s.polys.empty()) throw std::invalid_argument("reduction input has no polynomials");
    for (const auto& p : s.polys)
        for (const auto& row : p.quad)
            for (const auto& a : row)
                if (a < -1 || a > 1)
                    throw std::invalid_argument("reduction input must be scaled into [-1,1]");
}

Game build_reduction_body(const PolySystem& s, int m, const Rational& threat_value,
                          bool merged_root, NodeIndex& idx) {
    Game g;
    g.players = m;
    int n = s.n;
    int ell = static_cast<int>(s.polys.size());
    if (merged_root) {
        append_var_nodes(g, n, m, idx);
    } else {
        std::vector<std::string> succ;
        std::vector<Rational> probs;
        for (int i = 1; i <= n; ++i) {
            succ.push_back("var.v" + std::to_string(i));
            probs.emplace_back(Rational(1) / n);
        }
        g.add_node(chance_node("var.root", std::move(succ), std::move(probs)));
        idx.roles["var.root"] = "var.root";
        append_var_nodes(g, n, m, idx);
    }
    for (int k = 1; k <= ell; ++k)
        append_poly_fragment(g, k, s.polys[k - 1], n, threat_value, idx, &idx);

    std::vector<std::string> succ;
    std::vector<Rational> probs;
    if (merged_root) {
        for (int i = 1; i <= n; ++i) {
            succ.push_back("var.v" + std::to_string(i));
            probs.emplace_back(Rational(1) / (2 * n));
        }
        for (int k = 1; k <= ell; ++k) {
            succ.push_back("poly" + std::to_string(k) + ".g6");
            probs.emplace_back(Rational(1) / (2 * ell));
        }
    } else {
        succ.push_back("var.root");
        probs.emplace_back(Rational(1, 2));
        for (int k = 1; k <= ell; ++k) {
            succ.push_back("poly" + std::to_string(k) + ".g6");
            probs.emplace_back(Rational(1) / (2 * ell));
        }
    }
    g.add_node(chance_node("root", std::move(succ), std::move(probs)));
    g.initial = "root";
    idx.roles["root"] = "root";
    return g;
}

}  // namespace detail

ReductionOutput build_full_game(const PolySystem& s) {
    detail::check_reduction_input(s);
    ReductionOutput out;
    out.n = s.n;
    out.ell = static_cast<int>(s.polys.size());
    out.variant = ReductionVariant::full;
    out.game =
        detail::build_reduction_body(s, 7, Rational(1) / (2 * s.n * s.n), false, out.index);
    out.demand = demand_vector(out.n, out.ell, DemandVariant::full);
    out.demand_reduced = demand_vector(out.n, out.ell, DemandVariant::reduced);
    return out;
}

ReductionOutput build_sure_game(const PolySystem& s) {
    detail::check_reduction_input(s);
    ReductionOutput out;
    out.n = s.n;
    out.ell = static_cast<int>(s.polys.size());
    out.variant = ReductionVariant::sure;
    NodeIndex& idx = out.index;

    Game inner = detail::build_reduction_body(s, 8, Rational(1) / (2 * s.n * s.n), false, idx);
    // The eighth player wins everywhere inside the compiled game.
    for (auto& node : inner.nodes)
        if (node.owner == Owner::terminal) node.reward[7] = 1;

    Game g;
    g.players = 8;
    std::vector<Rational> exit(8, Rational(0));
    exit[0] = Rational(1, 2);
    exit[1] = Rational(1) / s.n;
    exit[2] = Rational(s.n - 1) / s.n;
    g.add_node(player_node("sure.t1", 1, {"sure.t2", "sure.exit"}));
    g.add_node(player_node("sure.t2", 2, {"sure.t3", "sure.exit"}));
    g.add_node(player_node("sure.t3", 3, {"root", "sure.exit"}));
    g.add_node(terminal_node("sure.exit", std::move(exit)));
    for (auto& node : inner.nodes) g.add_node(std::move(node));
    g.initial = "sure.t1";
    idx.roles["sure.t1"] = "sure.t1";
    idx.roles["sure.t2"] = "sure.t2";
    idx.roles["sure.t3"] = "sure.t3";

    out.game = std::move(g);
    out.demand = demand_vector(out.n, out.ell, DemandVariant::sure8);
    out.demand_reduced = out.demand;
    return out;
}

Game build_exists_ne_game(const PolySystem& s, const Game& gadget, bool deterministic) {
    detail::check_reduction_input(s);
    if (deterministic && !rgames::deterministic(gadget))
        throw std::invalid_argument("deterministic composition needs a deterministic plug-in");
    // The plug-in's players take the indices 4..3+mg: those roles carry no
    // demand. In the deterministic variant the indices 8..13 drive the
    // chance simulation, so the plug-in must fit below them.
    int inner_players = deterministic ? 13 : 7;
    if (deterministic && 3 + gadget.players > 7)
        throw std::invalid_argument("player-index collision: plug-in needs players " +
                                    std::to_string(8) + "+");
    int m = std::max(inner_players, 3 + gadget.players);

    ReductionOutput base =
        deterministic ? build_deterministic_full_game(s) : build_full_game(s);
    Game inner = std::move(base.game);
    std::string inner_initial = inner.initial;
    if (deterministic) {
        // Shift the demanded players' rewards down by their demands; play
        // always reaches a terminal inside, so equilibria are unchanged and
        // the demand becomes the zero vector.
        const PayoffDemand& L = base.demand;
        for (auto& node : inner.nodes)
            if (node.owner == Owner::terminal)
                for (int i = 0; i < inner_players; ++i) node.reward[i] -= L.values[i];
    }

    Game g;
    g.players = m;
    auto pad = [&](std::vector<Rational> r) {
        r.resize(m, Rational(0));
        return r;
    };

    std::vector<std::pair<std::string, int>> threats;
    if (deterministic)
        threats = {{"ene.t1", 1}, {"ene.t2", 2}, {"ene.t3", 3}, {"ene.t8", 8}, {"ene.t11", 11}};
    else
        threats = {{"ene.t1", 1}, {"ene.t2", 2}, {"ene.t3", 3}};
    std::string exit_target = deterministic ? "gadget." + gadget.initial : "ene.t4";
    for (size_t i = 0; i < threats.size(); ++i) {
        std::string next = i + 1 < threats.size() ? threats[i + 1].first : inner_initial;
        g.add_node(player_node(threats[i].first, threats[i].second, {next, exit_target}));
    }
    if (!deterministic) {
        // Coin flip between a terminal paying twice the reduced demand and
        // the plug-in.
        PayoffDemand reduced = demand_vector(s.n, static_cast<int>(s.polys.size()),
                                             DemandVariant::reduced);
        std::vector<Rational> twice;
        for (const auto& r : reduced.values) twice.push_back(2 * r);
        g.add_node(chance_node("ene.t4", {"ene.exit2L", "gadget." + gadget.initial},
                               {Rational(1, 2), Rational(1, 2)}));
        g.add_node(terminal_node("ene.exit2L", pad(std::move(twice))));
    }
    for (const auto& node : gadget.nodes) {
        Node c = node;
        c.id = "gadget." + node.id;
        for (auto& s2 : c.succ) s2 = "gadget." + s2;
        if (c.owner == Owner::player) c.player += 3;
        if (c.owner == Owner::terminal) {
            std::vector<Rational> r(m, Rational(0));
            for (int i = 0; i < gadget.players; ++i) r[3 + i] = node.reward[i];
            c.reward = std::move(r);
        }
        g.add_node(std::move(c));
    }
    for (auto& node : inner.nodes) {
        Node c = std::move(node);
        if (c.owner == Owner::terminal) c.reward = pad(std::move(c.reward));
        g.add_node(std::move(c));
    }
    g.initial = "ene.t1";
    return g;
}

namespace {

void set_binary_choice(StationaryProfile& p, const std::string& node, const std::string& first,
                       const std::string& second, const Rational& prob_first) {
    std::map<std::string, Rational> row;
    if (prob_first != 0) row[first] = prob_first;
    if (prob_first != 1) row[second] = 1 - prob_first;
    p.choice[node] = std::move(row);
}

}  // namespace

StationaryProfile witness_to_profile(const ReductionOutput& out, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != out.n)
        throw std::invalid_argument("witness dimension mismatch");
    Rational sum = 0;
    for (const auto& v : x) {
        if (v < 0 || v > 1) throw std::invalid_argument("witness coordinate out of [0,1]");
        sum += v;
    }
    if (sum != 1) throw std::invalid_argument("witness point is not on the unit simplex");

    StationaryProfile p;
    for (const auto& [role, id] : out.index.roles) {
        const Game& g = out.game;
        const Node* node = g.find(id);
        if (node == nullptr || node->owner != Owner::player) continue;
        if (role.rfind("v.", 0) == 0) {
            int i = std::stoi(role.substr(2));
            set_binary_choice(p, id, node->succ[0], node->succ[1], x[i - 1]);
        } else if (role.size() > 2 && role.compare(role.size() - 2, 2, "w3") == 0) {
            // role: poly<k>.mul.<i>.<j>.w3 — continue with probability x_i
            std::vector<int> pair = [&] {
                std::vector<int> nums;
                std::istringstream ss(role);
                std::string part;
                while (std::getline(ss, part, '.'))
                    if (!part.empty() && std::isdigit(static_cast<unsigned char>(part[0])))
                        nums.push_back(std::stoi(part));
                return nums;
            }();
            int i = pair[pair.size() - 2];
            set_binary_choice(p, id, node->succ[0], node->succ[1], x[i - 1]);
        } else if (role.size() > 2 && role.compare(role.size() - 2, 2, "w6") == 0) {
            std::vector<int> nums;
            std::istringstream ss(role);
            std::string part;
            while (std::getline(ss, part, '.'))
                if (!part.empty() && std::isdigit(static_cast<unsigned char>(part[0])))
                    nums.push_back(std::stoi(part));
            int j = nums[nums.size() - 1];
            set_binary_choice(p, id, node->succ[0], node->succ[1], x[j - 1]);
        } else {
            // Every remaining controlled role is a threat node: continue.
            set_binary_choice(p, id, node->succ[0], node->succ[1], Rational(1));
        }
    }
    // Deterministic variants additionally play the chance-chain weights.
    for (const auto& gadget : out.gadgets) {
        for (const auto& s : gadget.s_nodes) {
            const Node* node = out.game.find(s);
            set_binary_choice(p, s, node->succ[0], node->succ[1], Rational(1));
        }
        for (const auto& r : gadget.r_nodes) {
            const Node* node = out.game.find(r);
            set_binary_choice(p, r, node->succ[0], node->succ[1], Rational(1));
        }
        for (size_t i = 0; i < gadget.t_nodes.size(); ++i) {
            const Node* node = out.game.find(gadget.t_nodes[i]);
            // First edge selects the outcome, second edge continues the chain.
            set_binary_choice(p, gadget.t_nodes[i], node->succ[0], node->succ[1],
                              1 - gadget.q[i]);
        }
    }
    return p;
}

SimplexPoint profile_to_witness(const ReductionOutput& out, const StationaryProfile& p) {
    std::vector<Rational> x(out.n, Rational(0));
    Rational sum = 0;
    for (int i = 1; i <= out.n; ++i) {
        const std::string& id = out.index.at("v." + std::to_string(i));
        const Node* node = out.game.find(id);
        auto it = p.choice.find(id);
        if (it == p.choice.end())
            throw std::invalid_argument("incomplete profile: no choice at node " + id);
        auto pit = it->second.find(node->succ[0]);
        x[i - 1] = pit == it->second.end() ? Rational(0) : pit->second;
        sum += x[i - 1];
    }
    // Deliberately no simplex constraint: coordinates land in [0,1] but the
    // sum may exceed 1. Meeting the demands is what forces the sum to 1.
    return {std::move(x), sum == 1};
}

}  // namespace rgames
