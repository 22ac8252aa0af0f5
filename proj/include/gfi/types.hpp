#pragma once

#include <stdexcept>
#include <string>

namespace gfi {

// Player 0 is the chance player; 1 and 2 are the two contestants.
using PlayerId = int;
using ActionId = int;

inline constexpr PlayerId kChancePlayer = 0;
inline constexpr int kNumPlayers = 2;

inline PlayerId opponent_of(PlayerId p) { return 3 - p; }

inline bool is_contestant(PlayerId p) { return p == 1 || p == 2; }

// Caller violated a precondition (bad action, wrong player, ...). Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration (bad k, unknown key, malformed file). Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem instance exceeds what the implementation can handle. Maps to exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gfi
