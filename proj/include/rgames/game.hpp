#pragma once

#include "rgames/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rgames {

enum class Owner { chance, player, terminal };

enum class Objective { terminal_rewards, reach, safe, mean_payoff };

/**
 * One node of the game graph.
 *
 * A node is a terminal exactly when `succ` is empty. Chance nodes carry
 * `probs` aligned with `succ`; probabilities must be positive and sum to 1.
 * Terminal nodes of a terminal-reward game carry one reward per player.
 */
struct Node {
    std::string id;
    Owner owner = Owner::terminal;
    int player = 0;  // 1-based, meaningful only when owner == Owner::player
    std::vector<std::string> succ;
    std::vector<Rational> probs;   // chance nodes, aligned with succ
    std::vector<Rational> reward;  // terminal nodes (terminal-reward objective)

    bool is_terminal() const { return owner == Owner::terminal; }
    bool operator==(const Node&) const = default;
};

/**
 * A perfect-information game on a directed graph.
 *
 * Nodes keep insertion order; that order is the canonical order used by
 * serialization and by every deterministic enumeration. Values of this type
 * are treated as immutable once built: all operations below are pure.
 */
struct Game {
    int players = 0;
    Objective objective = Objective::terminal_rewards;
    std::string initial;
    std::vector<Node> nodes;
    // reach/safe objectives: one node set per player (player i at index i-1)
    std::vector<std::vector<std::string>> objective_sets;
    // mean-payoff objective: per-node reward vectors; missing nodes mean 0
    std::map<std::string, std::vector<Rational>> node_rewards;

    Node& add_node(Node n);
    const Node* find(const std::string& id) const;
    Node* find(const std::string& id);
    // Index into `nodes`, or -1 when absent.
    int node_index(const std::string& id) const;

    bool operator==(const Game& o) const {
        return players == o.players && objective == o.objective && initial == o.initial &&
               nodes == o.nodes && objective_sets == o.objective_sets &&
               node_rewards == o.node_rewards;
    }

  private:
    std::unordered_map<std::string, int> index_;
};

/// Per-controlled-node distribution over successors.
struct StationaryProfile {
    std::map<std::string, std::map<std::string, Rational>> choice;
    bool operator==(const StationaryProfile&) const = default;
};

/// Per-player payoff lower bounds.
struct PayoffDemand {
    std::vector<Rational> values;
    bool operator==(const PayoffDemand&) const = default;
};

struct Violation {
    std::string node;  // empty for game-level violations
    std::string rule;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_text() const;
};

/// Checks every structural invariant; violations are data, not exceptions.
ValidationReport validate(const Game& g);

bool deterministic(const Game& g);

struct TopoResult {
    bool acyclic = false;
    std::vector<std::string> order;  // forward order when acyclic
    std::vector<std::string> cycle;  // a directed cycle otherwise (first == last)
};

/// Never trusts a cached flag: recomputes from the edge set.
TopoResult topological_order(const Game& g);

bool is_acyclic(const Game& g);
bool is_tree(const Game& g);

struct UnfoldResult {
    Game tree;
    // unfolded node id -> id of the original node it copies
    std::map<std::string, std::string> origin;
};

/**
 * Unfolds an acyclic game into a tree game with one node per distinct path
 * from the initial node. Pulling a stationary profile back along `origin`
 * preserves expected payoffs exactly. Rejects cyclic input.
 */
UnfoldResult unfold_to_tree(const Game& g);

/// Pulls a profile on `g` forward onto an unfolding of `g`.
StationaryProfile pull_back_profile(const UnfoldResult& u, const Game& original,
                                    const StationaryProfile& p);

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line, int column, const std::string& what);
};

/**
 * Text format, one node per line after the header:
 *
 *   players: 2
 *   initial: root
 *   objective: rewards            # optional: rewards|reach|safe|meanpayoff
 *   root chance a:1/2, b:1/2
 *   a player 1 t0, t1
 *   t0 terminal 1, 0
 *   reach 1 t0, t1                # reach/safe objectives
 *   reward a 0, 1/2               # meanpayoff node rewards
 *
 * '#' starts a comment; rationals are "p/q" or integers. parse_game
 * validates the result and throws ParseError on both syntax and invariant
 * violations.
 */
Game parse_game(const std::string& text);

/// Canonical form; parse_game(serialize_game(g)) is structurally identical to g.
std::string serialize_game(const Game& g);

/// Profile format: one `node succ:prob, succ:prob` line per controlled node.
/// Controlled nodes with a single successor may be omitted (forced choice).
StationaryProfile parse_profile(const std::string& text);
std::string serialize_profile(const Game& g, const StationaryProfile& p);

Game load_game_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rgames
