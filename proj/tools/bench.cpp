// Compares the parallel grid kernel against the pure-rational serial
// reference on the chain test game and a compiled instance.

#include "rgames/derandomize.hpp"
#include "rgames/equilibrium.hpp"
#include "rgames/evaluate.hpp"
#include "rgames/reductions.hpp"

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rgames;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_grid(const char* label, const Game& g, int d, const PayoffDemand* demand,
                long long cap) {
    GridOptions opt;
    opt.cap = cap;
    long long budget = grid_profile_count(g, d);
    std::printf("%s: d=%d budget=%lld\n", label, d, budget);

    auto t0 = std::chrono::steady_clock::now();
    auto serial = grid_search_serial(g, d, Rational(0), demand, opt);
    double ts = seconds_since(t0);
    std::printf("  serial exact   %8.3f s  found=%zu\n", ts, serial.size());

    t0 = std::chrono::steady_clock::now();
    auto parallel = grid_search(g, d, Rational(0), demand, opt);
    double tp = seconds_since(t0);
    std::printf("  screened%s  %8.3f s  found=%zu  speedup=%.2fx\n",
#ifdef _OPENMP
                "+omp",
#else
                "    ",
#endif
                tp, parallel.size(), ts / tp);
    if (!(serial == parallel)) std::printf("  MISMATCH between kernels\n");
}

void bench_mc(const Game& g, const StationaryProfile& p, long long samples) {
    auto t0 = std::chrono::steady_clock::now();
    MonteCarloResult r = simulate_payoffs(g, p, 7, samples);
    double t = seconds_since(t0);
    std::printf("monte carlo: %lld plays in %.3f s (player 1 mean %.6f)\n", r.samples, t,
                r.mean[0]);
}

}  // namespace

int main(int argc, char** argv) {
    long long cap = 20000000;
    int chain_d = argc > 1 ? std::atoi(argv[1]) : 6;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif

    // Chain test game with a demand filter: the workload of the uniqueness
    // scan.
    Game chain = chain_test_game({Rational(1, 2), Rational(1, 4)});
    PayoffDemand demand{{1, 0, 0}};
    bench_grid("chain game", chain, chain_d, &demand, cap);

    // Small compiled instance, unfiltered equilibrium scan.
    PolySystem s;
    s.n = 1;
    s.homogeneous = true;
    s.polys.push_back({{{Rational(0)}}, {}, 0});
    ReductionOutput red = build_full_game(s);
    bench_grid("compiled n=1", red.game, 2, nullptr, cap);

    StationaryProfile witness = witness_to_profile(red, {Rational(1)});
    bench_mc(red.game, witness, 200000);
    return 0;
}
