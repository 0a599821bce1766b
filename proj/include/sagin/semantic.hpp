#pragma once

#include <string>

namespace sagin {

// Qualitative resource labels produced by the perceiver and consumed by the
// reward shaper.  Enum order encodes severity; comparisons rely on
// Critical < Constrained < Adequate.
enum class EnergyLevel { Critical = 0, Constrained = 1, Adequate = 2 };

enum class SatelliteBackup { Unavailable = 0, AvailableHighLatency = 1 };

enum class GroundCongestion { Low = 0, High = 1 };

struct SemanticState {
  EnergyLevel uav_energy_level = EnergyLevel::Adequate;
  SatelliteBackup satellite_backup = SatelliteBackup::Unavailable;
  GroundCongestion ground_congestion = GroundCongestion::Low;
};

const char* to_string(EnergyLevel level);
const char* to_string(SatelliteBackup backup);
const char* to_string(GroundCongestion congestion);

}  // namespace sagin
