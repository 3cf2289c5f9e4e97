#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgames {

/// Runtime defaults; RGAMES_CONFIG may point at a `key: value` file with
/// grid-cap, eps, mc-seed, mc-samples. Command-line flags win.
struct Config {
    long long grid_cap = 10000000;
    std::string eps = "0";
    unsigned long long mc_seed = 1;
    long long mc_samples = 100000;
};

Config load_config_from_env();

/// Exit codes: 0 success / property holds, 1 property fails (no equilibrium,
/// demand unmet), 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgames
