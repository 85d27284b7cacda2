// Error types shared across the library.  config_error covers anything wrong
// with user-supplied parameters (maps to CLI exit 2), instability_error covers
// blow-ups detected while time-stepping (exit 3).
#pragma once

#include <stdexcept>
#include <string>

namespace selmut {

struct config_error : std::invalid_argument {
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

struct instability_error : std::runtime_error {
  explicit instability_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical contract was violated at runtime (scheme produced a clearly
// negative density, eigensolver failed to converge, ...).
struct numerics_error : std::runtime_error {
  explicit numerics_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace selmut
