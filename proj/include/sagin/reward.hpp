#pragma once

#include <string>

namespace sagin {

// Where the active lambda came from: which episode shaped it, what the
// semantic situation was, and which rule row fired.  Travels with the
// RewardConfig so logs can explain every reward retroactively.
struct RewardProvenance {
  int episode = -1;
  std::string semantic_label;
  std::string rule;
};

// Everything the simulator needs to score a step.  lambda weights the energy
// term against latency; the refs normalise both to comparable scales.
struct RewardConfig {
  double lambda = 1.0;
  double lambda_max = 8.0;   // observation scaling only, not a clamp
  double latency_ref_ms = 1000.0;
  double energy_ref = 0.01;
  RewardProvenance provenance;
};

}  // namespace sagin
