#pragma once

#include "rgames/reductions.hpp"

namespace rgames {

/// Continue probabilities that make the threat chain emit outcome i with
/// probability p_i: q_i = (1 - sum_{j>=i} p_j) / (1 - sum_{j>i} p_j), with
/// the running products q_hat_i = prod_{j<=i} q_j.
struct ChanceWeights {
    std::vector<Rational> q;
    std::vector<Rational> q_hat;
};

/// Requires p >= 0 componentwise and |p|_1 < 1.
ChanceWeights chance_weights(const std::vector<Rational>& p);

/// Parameters for one threat-enforced chance chain appended to a game under
/// construction. `continuations` lists the outcome targets u_1..u_N.
struct ChainSpec {
    std::vector<Rational> p;
    std::vector<std::string> continuations;
    int p1 = 0, p2 = 0, p3 = 0;  // chooser, s-threatener, r-threatener
    std::vector<Rational> bottom_rewards;
    std::string prefix;
};

/// Appends nodes s_i, r_i, t_i (initial s_N), threat exit terminals and the
/// bottom terminal; returns the chain description. The chooser picks
/// outcome u_i at t_i; the threat exits pay 1 - q_hat_i and q_hat_i to the
/// two threateners.
ChanceGadgetInfo append_chance_chain(Game& g, const ChainSpec& spec);

/// Three-player test game: the chain with every outcome replaced by a
/// terminal paying (1,1,0) and bottom (1,0,1). Under the q-profile the
/// chooser earns exactly 1 and both threats are indifferent.
Game chain_test_game(const std::vector<Rational>& p, ChanceGadgetInfo* info = nullptr);

enum class Grouping { per_node, shared_independent };

struct EliminationResult {
    Game game;
    std::vector<ChanceGadgetInfo> gadgets;
    // replaced chance node id -> entry node of its chain
    std::map<std::string, std::string> renamed;
};

/**
 * Replaces every chance node of an acyclic game by a threat chain with
 * p = scale * pi and a fresh bottom terminal where the original players get
 * 0. Each group of chains adds 3 players; `shared_independent` uses one
 * triple for all chains and requires that no chance node is reachable from
 * another. Conditional payoffs of the original players through one chain
 * scale by exactly `scale`.
 */
EliminationResult eliminate_chance_nodes(const Game& g, const Rational& scale, Grouping grouping);

/// The q-profile of the given chains with every threat off; merged into
/// composite witnesses.
StationaryProfile chain_profile(const Game& g, const std::vector<ChanceGadgetInfo>& gadgets);

/// Carries a profile of the original game onto the derandomized one:
/// successor ids pointing at replaced chance nodes follow the renaming, and
/// the chains play their q-profile.
StationaryProfile lift_profile(const EliminationResult& res, const StationaryProfile& p);

/// The 13-player deterministic compilation: merged root lottery and the
/// per-polynomial lotteries replaced by chains (triples 8,9,10 and a shared
/// 11,12,13), polynomial threat exits paying 1/(4 n^2).
ReductionOutput build_deterministic_full_game(const PolySystem& s);

/// Item-splitting game: a uniform lottery over items; Player 1 either gives
/// the item away or lets Player 2 give it back or discard it. The demand is
/// K/(2n) per player (K/2 with `paper_demand`).
std::pair<Game, PayoffDemand> build_partition_game(const std::vector<Rational>& items,
                                                   bool paper_demand = false);

struct PartitionOutput {
    Game game;
    PayoffDemand demand;
    std::vector<ChanceGadgetInfo> gadgets;
};

/// 5-player deterministic tree: the item lottery replaced by a chain at
/// scale 1/2 (triple 3,4,5); the chooser's demand of 1 pins the chain
/// weights.
PartitionOutput derandomize_partition(const std::vector<Rational>& items,
                                      bool paper_demand = false);

/**
 * Turns a terminal-reward game with rewards in [0,1] into a mean-payoff
 * game with node rewards in {0,1}: every terminal becomes a directed cycle
 * whose length is the lcm of the reward denominators, with player i
 * rewarded on a prefix of length r_i * D. Mean payoffs equal the original
 * expected payoffs for every stationary profile, exactly.
 */
Game rewards_to_cycles(const Game& g);

}  // namespace rgames
