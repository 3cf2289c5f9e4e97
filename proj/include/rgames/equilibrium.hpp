#pragma once

#include "rgames/evaluate.hpp"

#include <optional>

namespace rgames {

struct BestResponse {
    Rational value;
    // Positional certificate: controlled node id -> chosen successor id.
    // Substituted into the profile it achieves `value` for the deviator.
    std::map<std::string, std::string> strategy;
};

/**
 * Optimal deviation value for one player against the rest of the profile
 * (the induced finite MDP). Acyclic games use exact backward induction with
 * lowest-successor tie-breaking. Cyclic games require the deviator's rewards
 * to be non-negative and run policy iteration over positional policies with
 * exact evaluation per policy; switches happen only on strict improvement,
 * which makes every round increase the value vector and the final policy
 * optimal.
 */
BestResponse best_response(const Game& g, const StationaryProfile& p, int player);

/// Per-player best-response value of every node (index-aligned with cg).
std::vector<Rational> best_response_values(const CompiledGame& cg, const CompiledProfile& cp,
                                           int player);

/// regret_i = best-response value - expected payoff; zero vector iff exact NE.
std::vector<Rational> regret_vector(const Game& g, const StationaryProfile& p);

struct VerificationReport {
    PayoffVector payoffs;
    std::vector<Rational> regrets;
    Rational max_regret = Rational(0);
    bool is_ne = false;
    std::optional<bool> is_spe;
    std::optional<bool> demands_met;
    std::map<std::string, Rational> per_node_worst;
    std::string to_text() const;
};

VerificationReport verify_ne(const Game& g, const StationaryProfile& p, const Rational& eps,
                             const PayoffDemand* demand = nullptr);

/// Acyclic games only: checks the equilibrium condition with every node as
/// root; for stationary profiles this covers every finite history.
VerificationReport verify_spe(const Game& g, const StationaryProfile& p, const Rational& eps);

struct GridOptions {
    long long cap = 10000000;
    int jobs = 0;  // 0 = library default thread count
};

struct GridCapExceeded : std::runtime_error {
    long long required;
    explicit GridCapExceeded(long long required)
        : std::runtime_error("grid budget exceeded: " + std::to_string(required) + " profiles"),
          required(required) {}
};

/// Number of grid profiles at the given resolution (saturates at LLONG_MAX).
long long grid_profile_count(const Game& g, int resolution);

/**
 * Exhaustively enumerates all profiles whose node distributions lie on the
 * grid {0, 1/d, ..., 1} and returns those with max regret <= eps (and
 * payoffs >= demand when given), in enumeration order.
 *
 * The parallel kernel screens candidates with a conservative floating-point
 * pass and re-verifies every survivor with exact rationals, so results equal
 * the serial exact reference bit for bit; disjoint grid ranges are evaluated
 * concurrently and merged in range order.
 */
std::vector<StationaryProfile> grid_search(const Game& g, int resolution, const Rational& eps,
                                           const PayoffDemand* demand = nullptr,
                                           const GridOptions& opt = {});

/// Pure-rational serial reference for the parallel kernel.
std::vector<StationaryProfile> grid_search_serial(const Game& g, int resolution,
                                                  const Rational& eps,
                                                  const PayoffDemand* demand = nullptr,
                                                  const GridOptions& opt = {});

}  // namespace rgames
