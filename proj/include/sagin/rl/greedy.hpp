#pragma once

#include "sagin/sim_core.hpp"

namespace sagin {

// Myopic baseline: walks the discrete catalogue, previews the latency of
// every feasible entry, and takes the minimum (ties resolve to the lowest
// catalogue index, hence the lower power level).  Energy plays no part.
PlacementDecision greedy_select(const EnvState& env);

}  // namespace sagin
