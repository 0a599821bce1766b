#include "sagin/rl/greedy.hpp"

namespace sagin {

PlacementDecision greedy_select(const EnvState& env) {
  const std::vector<DiscreteAction> catalogue = enumerate_discrete_actions(env.world);

  bool found = false;
  PlacementDecision best{};
  double best_latency = 0.0;
  for (const DiscreteAction& entry : catalogue) {
    if (!discrete_entry_feasible(entry, env.world)) continue;
    const PlacementDecision candidate = materialize_discrete(entry, env.world);
    const double latency = preview_latency(env, candidate);
    if (!found || latency < best_latency) {
      found = true;
      best = candidate;
      best_latency = latency;
    }
  }
  if (!found)
    throw NoFeasibleNode("greedy_select: no feasible catalogue entry at step " +
                         std::to_string(env.step_index));
  return best;
}

}  // namespace sagin
