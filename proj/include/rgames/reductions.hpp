#pragma once

#include "rgames/game.hpp"

namespace rgames {

/// One quadratic polynomial sum_ij quad[i][j] x_i x_j + sum_i lin[i] x_i + c.
struct Poly {
    std::vector<std::vector<Rational>> quad;
    std::vector<Rational> lin;  // empty or size n
    Rational constant = Rational(0);
    bool operator==(const Poly&) const = default;
};

struct PolySystem {
    int n = 0;
    bool homogeneous = false;
    std::vector<Poly> polys;
    bool operator==(const PolySystem&) const = default;
};

Rational eval_poly(const Poly& p, const std::vector<Rational>& x);

/**
 * Text format:
 *   vars: 2
 *   homogeneous: yes
 *   poly 1:
 *   quad 1 1 1
 *   quad 2 2 -1
 * with optional `lin i p/q` and `const p/q` lines per polynomial.
 */
PolySystem parse_poly_system(const std::string& text);
std::string serialize_poly_system(const PolySystem& s);

/**
 * Adds a slack variable x_n with x_n = 1 - sum x_i: constants c become
 * c * (sum_i x_i)^2 and linear terms a x_i become a x_i * (sum_j x_j).
 * For every corner-simplex point the original and homogenized systems agree.
 */
PolySystem homogenize(const PolySystem& s);

/// Divides each polynomial by max(1, max |quad coefficient|); zero sets on
/// the simplex are unchanged.
PolySystem scale_coefficients(const PolySystem& s);

/// Point of the unit simplex (sum = 1) or the corner simplex (sum <= 1).
struct SimplexPoint {
    std::vector<Rational> x;
    bool unit = true;
};

SimplexPoint make_unit_simplex_point(std::vector<Rational> x);
SimplexPoint make_corner_simplex_point(std::vector<Rational> x);

/// Gadget role -> node id. Role keys are documented in the README; the node
/// ids themselves are stable role paths (var.v1, poly1.mul.2.1.w6, ...).
struct NodeIndex {
    std::map<std::string, std::string> roles;
    const std::string& at(const std::string& role) const;
};

/// One run of the chance-simulation chain (used by the deterministic
/// variants; filled by the derandomization pass).
struct ChanceGadgetInfo {
    int p1 = 0, p2 = 0, p3 = 0;       // chooser, first threatener, second threatener
    std::vector<std::string> s_nodes;  // s_1..s_N
    std::vector<std::string> r_nodes;
    std::vector<std::string> t_nodes;
    std::vector<Rational> q;  // continue probability at t_i
    std::string bottom;
};

enum class ReductionVariant { full, sure, deterministic13 };

struct ReductionOutput {
    Game game;
    PayoffDemand demand;
    PayoffDemand demand_reduced;
    NodeIndex index;
    int n = 0;
    int ell = 0;
    ReductionVariant variant = ReductionVariant::full;
    std::vector<ChanceGadgetInfo> gadgets;  // deterministic13 only
};

/// Variable-selection block: a chance node fanning out to n binary Player-1
/// nodes; the first choice rewards players 2 and 4, the second players 3
/// and 5.
Game build_var_game(int n, int m, NodeIndex* idx = nullptr);

/// Appends the w1..w6 multiplication chain for the pair (i, j) with inner
/// terminal weight alpha, threat edges pointing at the shared v-nodes from
/// `var_index`. Node ids take the given prefix.
void append_mul_fragment(Game& g, const std::string& prefix, int i, int j, const Rational& alpha,
                         const NodeIndex& var_index, NodeIndex* idx = nullptr);

/// Appends the k-th polynomial block: two threat nodes (players 6, 7) whose
/// exits pay `threat_value`, then a uniform chance node over the n^2
/// multiplication chains with alpha = (1 + a_ij)/2.
void append_poly_fragment(Game& g, int k, const Poly& poly, int n, const Rational& threat_value,
                          const NodeIndex& var_index, NodeIndex* idx = nullptr);

/// Standalone multiplication game for tests: shared v-nodes plus one chain,
/// initial at w1.
Game build_mul_game(int n, int i, int j, const Rational& alpha, NodeIndex* idx = nullptr);

/// Standalone polynomial game for tests: shared v-nodes plus one block,
/// initial at the player-6 threat node.
Game build_poly_game(int k, const PolySystem& s, const Rational& threat_value,
                     NodeIndex* idx = nullptr);

enum class DemandVariant { full, reduced, deterministic13, sure8 };

PayoffDemand demand_vector(int n, int ell, DemandVariant variant);

/// The 7-player compiled game: root chance sends half the mass to the
/// variable block and splits the rest over the polynomial blocks.
ReductionOutput build_full_game(const PolySystem& s);

/// The 8-player almost-surely-winning variant: three exit threats (players
/// 1-3) in front, an extra player rewarded 1 at every inner terminal.
ReductionOutput build_sure_game(const PolySystem& s);

/**
 * Composition skeleton that turns demand satisfaction into bare existence:
 * exit threats for the demanded players lead (via a coin flip onto a
 * doubled-demand terminal in the chance variant, or directly in the
 * deterministic variant) into a caller-supplied plug-in game with no
 * stationary equilibrium. The plug-in's players are renumbered to start at
 * 4; its internal behavior is the caller's responsibility.
 */
Game build_exists_ne_game(const PolySystem& s, const Game& gadget, bool deterministic);

/**
 * The profile encoding a simplex point: the first choice with probability
 * x_i at v_i, consistent choices inside every multiplication chain, all
 * threats off; deterministic variants additionally play the chance-chain
 * weights. Exact equilibrium with payoff equal to the demand whenever x is
 * on the unit simplex and zeroes every polynomial.
 */
StationaryProfile witness_to_profile(const ReductionOutput& out, const std::vector<Rational>& x);

/// Reads the simplex point back off the v-nodes; a corner-simplex point at
/// best — unit membership is exactly what the demands enforce.
SimplexPoint profile_to_witness(const ReductionOutput& out, const StationaryProfile& p);

}  // namespace rgames
