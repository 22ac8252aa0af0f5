#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gfi/types.hpp"

namespace gfi {

class FeatureSpace;
class StrategyView;

// The observation identity of a decision point. `key` is a canonical string
// encoding of everything `player` observes there; two histories share a key
// iff they are indistinguishable to that player.
struct InfosetKey {
  PlayerId player = 0;
  std::string key;

  friend bool operator==(const InfosetKey&, const InfosetKey&) = default;
  friend auto operator<=>(const InfosetKey&, const InfosetKey&) = default;
};

// A node in the game tree. States are immutable values: child() returns a
// fresh successor and leaves the parent untouched, so callers may retain
// parents and share states across threads freely.
class GameState {
 public:
  virtual ~GameState() = default;

  virtual bool is_terminal() const = 0;

  // kChancePlayer at chance nodes. Must not be called on terminals.
  virtual PlayerId player_to_act() const = 0;

  // Number of legal actions; actions are 0..n-1 in a fixed game-specific order.
  virtual int num_actions() const = 0;

  // Chance-node outcome probabilities, written into `out` (size num_actions()).
  virtual void chance_probs(std::span<double> out) const = 0;

  // Maps u in [0,1) to a chance outcome consistent with chance_probs().
  virtual ActionId sample_chance(double u) const;

  // Terminal payoff for player 1 or 2. u1 + u2 == 0 exactly.
  virtual double utility(PlayerId player) const = 0;

  virtual std::unique_ptr<GameState> child(ActionId action) const = 0;

  // Canonical infoset string for the player to act. Stable across runs.
  virtual std::string infoset_string() const = 0;

  virtual std::string action_label(ActionId action) const = 0;

  bool is_chance() const { return !is_terminal() && player_to_act() == kChancePlayer; }
};

class Game {
 public:
  virtual ~Game() = default;

  virtual std::unique_ptr<GameState> initial_state() const = 0;
  virtual std::string name() const = 0;

  // Upper bound on num_actions() over all states; used to size stack buffers.
  virtual int max_actions() const = 0;

  // Player 1's equilibrium payoff when known analytically (e.g. 0 by symmetry).
  virtual std::optional<double> known_game_value1() const { return std::nullopt; }

  // Feature annotation of one player's infosets, or nullptr if the game does
  // not define features.
  virtual const FeatureSpace* feature_space() const { return nullptr; }
};

// Infoset key of `state` for `player`. Fails if the state is not a decision
// node of that player.
InfosetKey infoset_key(const GameState& state, PlayerId player);

// Exhaustive list of `player`'s reachable infosets with their action counts,
// sorted by key. Traverses the full tree; the caller bounds the game size.
std::vector<std::pair<InfosetKey, int>> enumerate_infosets(const Game& game,
                                                           PlayerId player);

// Exact expected payoff of `player` under `profile`: full tree traversal,
// each terminal weighted by its reach probability. Deterministic (fixed DFS
// order), so results are bit-identical across runs.
double expected_value(const Game& game, const StrategyView& profile,
                      PlayerId player);

}  // namespace gfi
