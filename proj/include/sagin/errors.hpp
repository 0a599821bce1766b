#pragma once

#include <stdexcept>
#include <string>

namespace sagin {

// Raised when a config file or config struct fails validation.  The message
// names the offending field so callers can surface it directly.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when every placement candidate is masked out (all UAVs depleted and
// no other node can serve the task).
class NoFeasibleNode : public std::runtime_error {
 public:
  explicit NoFeasibleNode(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed persisted state: agent snapshots, knowledge streams.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sagin
