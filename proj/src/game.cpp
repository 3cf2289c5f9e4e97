#include "rgames/game.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rgames {

Node& Game::add_node(Node n) {
    if (index_.count(n.id)) throw std::invalid_argument("duplicate node id: " + n.id);
    index_[n.id] = static_cast<int>(nodes.size());
    nodes.push_back(std::move(n));
    return nodes.back();
}

const Node* Game::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &nodes[it->second];
}

Node* Game::find(const std::string& id) {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &nodes[it->second];
}

int Game::node_index(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

std::string ValidationReport::to_text() const {
    if (violations.empty()) return "ok\n";
    std::string out;
    for (const auto& v : violations) {
        if (!v.node.empty()) out += v.node + ": ";
        out += v.rule;
        if (!v.detail.empty()) out += " (" + v.detail + ")";
        out += "\n";
    }
    return out;
}

ValidationReport validate(const Game& g) {
    ValidationReport rep;
    auto add = [&](const std::string& node, const std::string& rule, const std::string& detail) {
        rep.violations.push_back({node, rule, detail});
    };
    if (g.players < 1) add("", "player count must be positive", std::to_string(g.players));
    if (g.find(g.initial) == nullptr) add("", "initial node missing", g.initial);

    for (const auto& n : g.nodes) {
        for (const auto& s : n.succ)
            if (g.find(s) == nullptr) add(n.id, "edge target missing", s);
        // Parallel edges would make successor-keyed profiles ambiguous.
        std::vector<std::string> sorted = n.succ;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            add(n.id, "duplicate edge target", "");
        switch (n.owner) {
            case Owner::terminal:
                if (!n.succ.empty()) add(n.id, "terminal has successors", "");
                if (g.objective == Objective::terminal_rewards &&
                    static_cast<int>(n.reward.size()) != g.players)
                    add(n.id, "reward arity",
                        std::to_string(n.reward.size()) + " != " + std::to_string(g.players));
                break;
            case Owner::player:
                if (n.player < 1 || n.player > g.players)
                    add(n.id, "player index out of range", std::to_string(n.player));
                if (n.succ.empty()) add(n.id, "non-terminal node has no successors", "");
                break;
            case Owner::chance: {
                if (n.succ.empty()) add(n.id, "non-terminal node has no successors", "");
                if (n.probs.size() != n.succ.size()) {
                    add(n.id, "chance distribution arity", "");
                    break;
                }
                Rational sum = 0;
                bool positive = true;
                for (const auto& p : n.probs) {
                    if (p <= 0) positive = false;
                    sum += p;
                }
                if (!positive) add(n.id, "chance probability not positive", "");
                if (sum != 1) add(n.id, "distribution sums to " + to_string(sum), "");
                break;
            }
        }
    }

    if (g.objective == Objective::reach || g.objective == Objective::safe) {
        if (static_cast<int>(g.objective_sets.size()) > g.players)
            add("", "objective set arity", "");
        for (size_t i = 0; i < g.objective_sets.size(); ++i)
            for (const auto& id : g.objective_sets[i])
                if (g.find(id) == nullptr)
                    add(id, "objective set node missing", "player " + std::to_string(i + 1));
    }
    if (g.objective == Objective::mean_payoff) {
        for (const auto& [id, r] : g.node_rewards) {
            if (g.find(id) == nullptr) add(id, "reward node missing", "");
            if (static_cast<int>(r.size()) != g.players) add(id, "reward arity", "");
        }
    }
    return rep;
}

bool deterministic(const Game& g) {
    return std::none_of(g.nodes.begin(), g.nodes.end(),
                        [](const Node& n) { return n.owner == Owner::chance; });
}

TopoResult topological_order(const Game& g) {
    TopoResult res;
    const int n = static_cast<int>(g.nodes.size());
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(n, 0);
    std::vector<int> order;
    order.reserve(n);

    // Iterative DFS; on a back edge, reconstruct the cycle from the stack.
    std::vector<std::pair<int, size_t>> stack;
    for (int start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        stack.push_back({start, 0});
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, edge] = stack.back();
            if (edge < g.nodes[v].succ.size()) {
                int w = g.node_index(g.nodes[v].succ[edge]);
                ++edge;
                if (w < 0) continue;  // invalid games: skip missing targets
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.push_back({w, 0});
                } else if (state[w] == 1) {
                    std::vector<std::string> cycle;
                    size_t k = 0;
                    while (k < stack.size() && stack[k].first != w) ++k;
                    for (; k < stack.size(); ++k) cycle.push_back(g.nodes[stack[k].first].id);
                    cycle.push_back(g.nodes[w].id);
                    res.acyclic = false;
                    res.cycle = std::move(cycle);
                    return res;
                }
            } else {
                state[v] = 2;
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    res.acyclic = true;
    std::reverse(order.begin(), order.end());
    for (int v : order) res.order.push_back(g.nodes[v].id);
    return res;
}

bool is_acyclic(const Game& g) { return topological_order(g).acyclic; }

bool is_tree(const Game& g) {
    if (!is_acyclic(g)) return false;
    std::map<std::string, int> indeg;
    for (const auto& n : g.nodes)
        for (const auto& s : n.succ) indeg[s]++;
    for (const auto& n : g.nodes) {
        int d = indeg.count(n.id) ? indeg[n.id] : 0;
        if (n.id == g.initial ? d != 0 : d != 1) return false;
    }
    return true;
}

UnfoldResult unfold_to_tree(const Game& g) {
    if (!is_acyclic(g)) throw std::invalid_argument("unfold_to_tree: game is cyclic");
    UnfoldResult res;
    res.tree.players = g.players;
    res.tree.objective = g.objective;
    res.tree.objective_sets = g.objective_sets;

    std::map<std::string, int> copies;
    auto fresh_id = [&](const std::string& orig) {
        int k = copies[orig]++;
        return k == 0 ? orig : orig + "~" + std::to_string(k);
    };

    // DFS over paths; each visit creates one copy of the visited node.
    struct Item {
        int orig;
        std::string copy_id;
    };
    std::vector<Item> stack;
    int root = g.node_index(g.initial);
    std::string root_id = fresh_id(g.initial);
    res.tree.initial = root_id;
    stack.push_back({root, root_id});
    while (!stack.empty()) {
        auto [v, id] = stack.back();
        stack.pop_back();
        const Node& orig = g.nodes[v];
        Node copy = orig;
        copy.id = id;
        copy.succ.clear();
        std::vector<Item> children;
        for (const auto& s : orig.succ) {
            std::string child = fresh_id(s);
            copy.succ.push_back(child);
            children.push_back({g.node_index(s), child});
        }
        // Reverse push so the copies pop in successor order.
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
        res.tree.add_node(std::move(copy));
        res.origin[id] = orig.id;
        if (g.objective == Objective::mean_payoff) {
            auto it = g.node_rewards.find(orig.id);
            if (it != g.node_rewards.end()) res.tree.node_rewards[id] = it->second;
        }
    }
    // Objective sets refer to original ids; lift them to all copies.
    if (g.objective == Objective::reach || g.objective == Objective::safe) {
        std::vector<std::vector<std::string>> lifted(g.objective_sets.size());
        for (const auto& [copy, orig] : res.origin)
            for (size_t i = 0; i < g.objective_sets.size(); ++i)
                if (std::count(g.objective_sets[i].begin(), g.objective_sets[i].end(), orig))
                    lifted[i].push_back(copy);
        res.tree.objective_sets = std::move(lifted);
    }
    return res;
}

StationaryProfile pull_back_profile(const UnfoldResult& u, const Game& original,
                                    const StationaryProfile& p) {
    StationaryProfile out;
    for (const auto& n : u.tree.nodes) {
        if (n.owner != Owner::player) continue;
        const std::string& orig = u.origin.at(n.id);
        auto it = p.choice.find(orig);
        if (it == p.choice.end()) continue;
        std::map<std::string, Rational> row;
        for (const auto& s : n.succ) {
            auto pit = it->second.find(u.origin.at(s));
            if (pit != it->second.end() && pit->second != 0) row[s] = pit->second;
        }
        out.choice[n.id] = std::move(row);
    }
    (void)original;
    return out;
}

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<Line> logical_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        size_t b = raw.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = raw.find_last_not_of(" \t\r");
        lines.push_back({no, raw.substr(b, e - b + 1)});
    }
    return lines;
}

// Splits "a, b, c" or "a b c" into trimmed tokens.
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Rational parse_rational_at(const std::string& tok, int line) {
    auto r = try_parse_rational(tok);
    if (!r) throw ParseError(line, 0, "not a rational: '" + tok + "'");
    return *r;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line(line),
      column(column) {}

Game parse_game(const std::string& text) {
    Game g;
    bool have_players = false, have_initial = false;
    for (const auto& [no, line] : logical_lines(text)) {
        std::istringstream in(line);
        std::string first;
        in >> first;
        if (first == "players:") {
            if (!(in >> g.players)) throw ParseError(no, 0, "players: expects an integer");
            have_players = true;
            continue;
        }
        if (first == "initial:") {
            if (!(in >> g.initial)) throw ParseError(no, 0, "initial: expects a node id");
            have_initial = true;
            continue;
        }
        if (first == "objective:") {
            std::string kind;
            in >> kind;
            if (kind == "rewards") g.objective = Objective::terminal_rewards;
            else if (kind == "reach") g.objective = Objective::reach;
            else if (kind == "safe") g.objective = Objective::safe;
            else if (kind == "meanpayoff") g.objective = Objective::mean_payoff;
            else throw ParseError(no, 0, "unknown objective '" + kind + "'");
            continue;
        }
        if (!have_players) throw ParseError(no, 0, "players: header must come first");
        if (first == "reach" || first == "safe") {
            int player;
            if (!(in >> player)) throw ParseError(no, 0, first + " expects a player index");
            std::string rest;
            std::getline(in, rest);
            if (player < 1 || player > g.players)
                throw ParseError(no, 0, "player index out of range");
            if (static_cast<int>(g.objective_sets.size()) < g.players)
                g.objective_sets.resize(g.players);
            for (const auto& id : split_list(rest))
                g.objective_sets[player - 1].push_back(id);
            continue;
        }
        if (first == "reward") {
            std::string id;
            if (!(in >> id)) throw ParseError(no, 0, "reward expects a node id");
            std::string rest;
            std::getline(in, rest);
            std::vector<Rational> r;
            for (const auto& tok : split_list(rest)) r.push_back(parse_rational_at(tok, no));
            g.node_rewards[id] = std::move(r);
            continue;
        }

        // node line: <id> chance|player|terminal ...
        std::string id = first, kind;
        if (!(in >> kind)) throw ParseError(no, 0, "expected node kind after '" + id + "'");
        Node node;
        node.id = id;
        if (kind == "chance") {
            node.owner = Owner::chance;
            std::string rest;
            std::getline(in, rest);
            for (const auto& tok : split_list(rest)) {
                size_t colon = tok.rfind(':');
                if (colon == std::string::npos)
                    throw ParseError(no, 0, "chance edge needs succ:prob, got '" + tok + "'");
                node.succ.push_back(tok.substr(0, colon));
                node.probs.push_back(parse_rational_at(tok.substr(colon + 1), no));
            }
        } else if (kind == "player") {
            node.owner = Owner::player;
            if (!(in >> node.player)) throw ParseError(no, 0, "player node needs an owner index");
            std::string rest;
            std::getline(in, rest);
            node.succ = split_list(rest);
        } else if (kind == "terminal") {
            node.owner = Owner::terminal;
            std::string rest;
            std::getline(in, rest);
            for (const auto& tok : split_list(rest)) node.reward.push_back(parse_rational_at(tok, no));
        } else {
            throw ParseError(no, 0, "unknown node kind '" + kind + "'");
        }
        try {
            g.add_node(std::move(node));
        } catch (const std::invalid_argument& e) {
            throw ParseError(no, 0, e.what());
        }
    }
    if (!have_players) throw ParseError(0, 0, "missing players: header");
    if (!have_initial) throw ParseError(0, 0, "missing initial: header");
    if (g.objective == Objective::reach || g.objective == Objective::safe)
        if (static_cast<int>(g.objective_sets.size()) < g.players)
            g.objective_sets.resize(g.players);
    ValidationReport rep = validate(g);
    if (!rep.ok()) {
        const auto& v = rep.violations.front();
        throw ParseError(0, 0, (v.node.empty() ? "" : v.node + ": ") + v.rule +
                                   (v.detail.empty() ? "" : " (" + v.detail + ")"));
    }
    return g;
}

std::string serialize_game(const Game& g) {
    std::string out;
    out += "players: " + std::to_string(g.players) + "\n";
    out += "initial: " + g.initial + "\n";
    switch (g.objective) {
        case Objective::terminal_rewards: break;
        case Objective::reach: out += "objective: reach\n"; break;
        case Objective::safe: out += "objective: safe\n"; break;
        case Objective::mean_payoff: out += "objective: meanpayoff\n"; break;
    }
    for (const auto& n : g.nodes) {
        out += n.id;
        switch (n.owner) {
            case Owner::chance:
                out += " chance ";
                for (size_t i = 0; i < n.succ.size(); ++i) {
                    if (i > 0) out += ", ";
                    out += n.succ[i] + ":" + to_string(n.probs[i]);
                }
                break;
            case Owner::player:
                out += " player " + std::to_string(n.player) + " ";
                for (size_t i = 0; i < n.succ.size(); ++i) {
                    if (i > 0) out += ", ";
                    out += n.succ[i];
                }
                break;
            case Owner::terminal:
                out += " terminal";
                if (!n.reward.empty()) out += " " + to_string(n.reward);
                break;
        }
        out += "\n";
    }
    if (g.objective == Objective::reach || g.objective == Objective::safe) {
        const char* label = g.objective == Objective::reach ? "reach" : "safe";
        for (size_t i = 0; i < g.objective_sets.size(); ++i) {
            if (g.objective_sets[i].empty()) continue;
            out += std::string(label) + " " + std::to_string(i + 1) + " ";
            for (size_t k = 0; k < g.objective_sets[i].size(); ++k) {
                if (k > 0) out += ", ";
                out += g.objective_sets[i][k];
            }
            out += "\n";
        }
    }
    if (g.objective == Objective::mean_payoff) {
        // Emit in node order for determinism.
        for (const auto& n : g.nodes) {
            auto it = g.node_rewards.find(n.id);
            if (it == g.node_rewards.end()) continue;
            out += "reward " + n.id + " " + to_string(it->second) + "\n";
        }
    }
    return out;
}

StationaryProfile parse_profile(const std::string& text) {
    StationaryProfile p;
    for (const auto& [no, line] : logical_lines(text)) {
        std::istringstream in(line);
        std::string id;
        in >> id;
        std::string rest;
        std::getline(in, rest);
        std::map<std::string, Rational> row;
        for (const auto& tok : split_list(rest)) {
            size_t colon = tok.rfind(':');
            if (colon == std::string::npos)
                throw ParseError(no, 0, "profile entry needs succ:prob, got '" + tok + "'");
            row[tok.substr(0, colon)] = parse_rational_at(tok.substr(colon + 1), no);
        }
        p.choice[id] = std::move(row);
    }
    return p;
}

std::string serialize_profile(const Game& g, const StationaryProfile& p) {
    std::string out;
    for (const auto& n : g.nodes) {
        auto it = p.choice.find(n.id);
        if (it == p.choice.end()) continue;
        out += n.id;
        bool first = true;
        for (const auto& s : n.succ) {
            auto pit = it->second.find(s);
            if (pit == it->second.end() || pit->second == 0) continue;
            out += first ? " " : ", ";
            out += s + ":" + to_string(pit->second);
            first = false;
        }
        out += "\n";
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

Game load_game_file(const std::string& path) { return parse_game(read_text_file(path)); }

}  // namespace rgames
