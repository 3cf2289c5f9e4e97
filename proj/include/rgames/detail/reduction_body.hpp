#pragma once

#include "rgames/reductions.hpp"

namespace rgames::detail {

// Shared body of the compiled game: the variable block plus all polynomial
// blocks under a root lottery. `merged_root` fuses the two-stage root
// lottery into a single chance node (the shape the chance-elimination pass
// consumes).
Game build_reduction_body(const PolySystem& s, int players, const Rational& threat_value,
                          bool merged_root, NodeIndex& idx);

void check_reduction_input(const PolySystem& s);

}  // namespace rgames::detail
