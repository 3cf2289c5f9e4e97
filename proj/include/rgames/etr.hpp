#pragma once

#include "rgames/game.hpp"

namespace rgames {

/// coeff * product of variables (at most two; degree <= 2 throughout).
struct Monomial {
    Rational coeff;
    std::vector<int> vars;  // indices into Formula::vars, sorted
    bool operator==(const Monomial&) const = default;
};

struct Polynomial {
    std::vector<Monomial> terms;
    bool operator==(const Polynomial&) const = default;
};

enum class Cmp { eq, ge };

/// poly = 0 or poly >= 0.
struct Atom {
    Polynomial poly;
    Cmp cmp = Cmp::eq;
    bool operator==(const Atom&) const = default;
};

/// Disjunction of atoms; a singleton is a plain atom. The formula is the
/// conjunction of its constraints.
struct Constraint {
    std::vector<Atom> disjuncts;
    bool operator==(const Constraint&) const = default;
};

struct Formula {
    std::vector<std::string> vars;
    std::vector<Constraint> constraints;
    int var(const std::string& name);  // interns a variable name
};

/**
 * The existential sentence asserting a stationary equilibrium of an acyclic
 * terminal-reward game, over variables tau.<node>.<succ>, U.<player>.<node>
 * and B.<player>.<node>:
 *   (a) simplex rows at every controlled node,
 *   (b) value flow pinning U,
 *   (c) best-response flow pinning B (max via >= plus an equality
 *       disjunction at the owner's nodes),
 *   (d) U >= B at the root for every player,
 *   (e) with `spe`: tau_{v,w} * (B_{i,v} - B_{i,w}) = 0 at every node v
 *       owned by i — equilibrium at every node,
 *   (f) with a demand: U at the root bounded below, one separate clause per
 *       player, appended last so the demand-free formula is a textual
 *       prefix.
 * Satisfiable iff the game has a stationary equilibrium (subgame-perfect
 * with `spe`) meeting the demand. Cyclic games are rejected: their values
 * are least fixed points and a naive encoding admits spurious solutions.
 */
Formula encode_stationary_ne(const Game& g, const PayoffDemand* demand = nullptr,
                             bool spe = false);

/// Exact evaluation of the constraints under a full assignment.
bool check_assignment(const Formula& f, const std::map<std::string, Rational>& assignment);

/// Builds the satisfying assignment a profile induces: tau from the
/// profile, U and B by backward computation.
std::map<std::string, Rational> assignment_from_profile(const Game& g,
                                                        const StationaryProfile& p);

/// SMT-LIB2, logic QF_NRA; constraints in emission order, one assert per
/// constraint.
std::string to_smt2(const Formula& f);

/// Internal s-expression form with exact rationals.
std::string to_sexpr(const Formula& f);

}  // namespace rgames
