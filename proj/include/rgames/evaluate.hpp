#pragma once

#include "rgames/game.hpp"

#include <cstdint>
#include <set>

namespace rgames {

using PayoffVector = std::vector<Rational>;

/// Index-based view of a game; built once, shared by the evaluation loops.
struct CompiledGame {
    int players = 0;
    int initial = -1;
    bool acyclic = false;
    Objective objective = Objective::terminal_rewards;
    struct CNode {
        Owner owner;
        int player;
        std::vector<int> succ;
        std::vector<Rational> probs;
        std::vector<Rational> reward;
    };
    std::vector<CNode> nodes;
    std::vector<int> topo;        // forward order, acyclic games only
    std::vector<int> controlled;  // player-owned nodes in node order
    std::vector<std::string> ids;
};

CompiledGame compile_game(const Game& g);

/// Per-node successor distributions aligned with CNode::succ
/// (empty rows at chance/terminal nodes).
struct CompiledProfile {
    std::vector<std::vector<Rational>> rows;
};

/// Validates completeness and support; single-successor controlled nodes
/// default to the forced choice when missing from `p`.
CompiledProfile compile_profile(const CompiledGame& cg, const StationaryProfile& p);

/// Expected terminal reward per node and player under the chain induced by
/// the profile. Cyclic games get the absorption-system solution, where play
/// that never reaches a terminal contributes 0.
std::vector<PayoffVector> node_payoffs(const CompiledGame& cg, const CompiledProfile& cp);

PayoffVector expected_payoffs(const Game& g, const StationaryProfile& p);

/// Probability of reaching `target` from every node, exact.
std::map<std::string, Rational> reach_probabilities(const Game& g, const StationaryProfile& p,
                                                    const std::set<std::string>& target);

std::vector<Rational> reach_probabilities_compiled(const CompiledGame& cg,
                                                   const CompiledProfile& cp,
                                                   const std::vector<bool>& target);

/**
 * Long-run average reward for mean-payoff games whose induced chain absorbs
 * into simple deterministic cycles (terminals count as length-1 cycles).
 * Any other bottom structure is rejected.
 */
PayoffVector mean_payoff(const Game& g, const StationaryProfile& p);

/// Reach/safe objective games: per-player probability of satisfying the
/// objective.
PayoffVector objective_payoffs(const Game& g, const StationaryProfile& p);

enum class BinarySet { zero_one, signed_unit };

/**
 * Replaces every terminal whose rewards are not already in the target set by
 * a chance node over at most m+1 fresh binary terminals with the same
 * expectation, via the monotone staircase decomposition. Expected payoffs of
 * every stationary profile are unchanged.
 */
Game normalize_rewards_to_binary(const Game& g, BinarySet target);

/// Per-player increasing affine reward map r -> a*r + b.
struct AffineMap {
    Rational a = Rational(1);
    Rational b = Rational(0);
    Rational operator()(const Rational& r) const { return a * r + b; }
};

/**
 * The reward maps used by to_objective_form; increasing per player, so
 * best-response argmax sets and equilibria are preserved:
 *   reach: a = 1/M_i, b = 0 with M_i = max(1, max_t r_i(t)).
 *   safe:  with M_i = max(1, max_t |r_i(t)|): identity scaling
 *          a = 1/M_i, b = 0 when player i's rewards are all <= 0 already,
 *          else a = 1/(2 M_i), b = -1/2, landing in [-1,0].
 */
std::vector<AffineMap> objective_affine_maps(const Game& g, Objective kind);

/**
 * Converts a terminal-reward game into a reach or safe objective game:
 * rewards pass through the affine maps above, are binarized ({0,1} or
 * {-1,0}), and become objective sets (reach set of i = terminals where i is
 * paid 1; safe set of i = everything except terminals where i is paid -1).
 * For every profile, objective payoffs relate to the original payoffs
 * exactly: reach_i = A_i(payoff_i); safe_i = A_i(payoff_i) + 1 whenever play
 * terminates almost surely (always in acyclic games).
 */
Game to_objective_form(const Game& g, Objective kind);

struct MonteCarloResult {
    std::vector<double> mean;
    std::vector<double> std_error;
    long long samples = 0;
};

/**
 * Sampling estimate of expected_payoffs. Deterministic for a fixed seed
 * independently of thread count: plays are split into fixed-size chunks with
 * per-chunk generators and merged in chunk order.
 */
MonteCarloResult simulate_payoffs(const Game& g, const StationaryProfile& p, std::uint64_t seed,
                                  long long samples, int step_cap = 100000);

}  // namespace rgames
