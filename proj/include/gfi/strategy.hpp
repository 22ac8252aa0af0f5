#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gfi/game.hpp"
#include "gfi/types.hpp"

namespace gfi {

// Read interface the evaluators traverse with. Implementations must be
// deterministic and safe for concurrent reads.
class StrategyView {
 public:
  virtual ~StrategyView() = default;

  // Action probabilities for the player to act at `state`; `out` has size
  // state.num_actions(). Must not be called at chance or terminal nodes.
  virtual void action_probs(const GameState& state, std::span<double> out) const = 0;
};

class UniformStrategy final : public StrategyView {
 public:
  void action_probs(const GameState& state, std::span<double> out) const override;
};

// Transparent hasher so tables can be probed with string_view keys.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
struct StringEq {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept { return a == b; }
};

// Behavior strategies for both players, keyed by infoset string. Lookups for
// unknown keys fall back to the uniform distribution so evaluation is total
// even over profiles from sampling solvers that never visited an infoset.
class StrategyProfile final : public StrategyView {
 public:
  using Table = std::unordered_map<std::string, std::vector<double>, StringHash, StringEq>;

  void set(PlayerId player, std::string key, std::vector<double> probs);

  // nullptr when the key is unknown.
  const std::vector<double>* find(PlayerId player, std::string_view key) const;

  // Stored distribution or uniform fallback, written into `out`.
  void probs_for(PlayerId player, std::string_view key, std::span<double> out) const;

  void action_probs(const GameState& state, std::span<double> out) const override;

  const Table& table(PlayerId player) const { return tables_[player - 1]; }
  std::size_t entry_count() const { return tables_[0].size() + tables_[1].size(); }

  // Interchange format shared by solver, evaluator and explainers:
  // {"schema": ..., "profiles": [{"player": 1, "entries": [{"infoset": key,
  // "probs": [...]}, ...]}, ...]} with entries sorted by key. Serialization
  // round-trips bit-exactly. from_json validates distributions (sum within
  // 1e-9, non-negative entries) and throws ConfigError on violations.
  std::string to_json_string() const;
  static StrategyProfile from_json_string(const std::string& text);

  void save(const std::string& path) const;
  static StrategyProfile load(const std::string& path);

 private:
  Table tables_[kNumPlayers];
};

// Routes each contestant's decisions to a separate view.
class PerPlayerView final : public StrategyView {
 public:
  PerPlayerView(const StrategyView& p1, const StrategyView& p2) : views_{&p1, &p2} {}

  void action_probs(const GameState& state, std::span<double> out) const override {
    views_[state.player_to_act() - 1]->action_probs(state, out);
  }

 private:
  const StrategyView* views_[kNumPlayers];
};

}  // namespace gfi
