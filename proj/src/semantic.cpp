#include "sagin/semantic.hpp"

namespace sagin {

const char* to_string(EnergyLevel level) {
  switch (level) {
    case EnergyLevel::Critical: return "Critical";
    case EnergyLevel::Constrained: return "Constrained";
    case EnergyLevel::Adequate: return "Adequate";
  }
  return "Adequate";
}

const char* to_string(SatelliteBackup backup) {
  switch (backup) {
    case SatelliteBackup::Unavailable: return "Unavailable";
    case SatelliteBackup::AvailableHighLatency: return "AvailableHighLatency";
  }
  return "Unavailable";
}

const char* to_string(GroundCongestion congestion) {
  switch (congestion) {
    case GroundCongestion::Low: return "Low";
    case GroundCongestion::High: return "High";
  }
  return "Low";
}

}  // namespace sagin
