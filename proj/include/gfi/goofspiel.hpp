#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gfi/features.hpp"
#include "gfi/game.hpp"
#include "gfi/types.hpp"

namespace gfi {

// Sequential-move Goofspiel. Each round chance draws a center card from the
// pile, player 1 commits a card from their hand, then player 2 picks one
// without seeing player 1's pending choice. The higher card wins the center
// card's value; ties award nothing. Used cards leave play.

enum class UtilityMode {
  // Terminal payoff is the point differential (acceptance default).
  kDifferential,
  // Win/draw/loss collapsed to +1/0/-1.
  kWinLoss,
};

struct GoofspielConfig {
  int k = 4;
  PlayerId target_player = 1;  // the explained player
  UtilityMode utility_mode = UtilityMode::kDifferential;

  // Throws ConfigError on bad values. k == 1 has no decisions; keys encode
  // cards as single digits, which caps k at 9.
  void validate() const;
};

class GoofspielGame;

class GoofspielState final : public GameState {
 public:
  explicit GoofspielState(const GoofspielGame* game);

  bool is_terminal() const override;
  PlayerId player_to_act() const override;
  int num_actions() const override;
  void chance_probs(std::span<double> out) const override;
  ActionId sample_chance(double u) const override;
  double utility(PlayerId player) const override;
  std::unique_ptr<GameState> child(ActionId action) const override;
  std::string infoset_string() const override;
  std::string action_label(ActionId action) const override;

  // Card behind an action at this state (1-based card value).
  int action_card(ActionId action) const;

  int round() const { return round_; }
  int points(PlayerId p) const { return points_[p - 1]; }
  int center_card() const { return center_; }
  std::uint16_t hand_mask(PlayerId p) const { return hand_[p - 1]; }
  std::uint16_t deck_mask() const { return deck_; }

 private:
  const GoofspielGame* game_;
  std::uint16_t deck_;      // cards still in the draw pile (bit c-1 = card c)
  std::uint16_t hand_[2];   // cards remaining in each hand
  std::int8_t center_ = 0;  // 0 = none drawn yet (chance to act)
  std::int8_t pending_ = 0; // player 1's committed card, hidden from player 2
  std::int8_t round_ = 0;
  std::int16_t points_[2] = {0, 0};
  // Resolved rounds as (center, p1 card, p2 card); public knowledge.
  std::array<std::array<std::int8_t, 3>, 9> history_;
};

// Typed feature values of one target-player infoset.
struct GoofspielFeatures {
  int center = 0;              // C: the center card
  std::vector<int> deck;       // D: cards remaining in the draw pile
  std::vector<int> opp_hand;   // O: cards remaining in the opponent's hand
  int point_diff = 0;          // P: target points minus opponent points
  std::vector<int> hand;       // action set: own remaining cards
};

class GoofspielFeatureSpace final : public FeatureSpace {
 public:
  GoofspielFeatureSpace(int k, PlayerId target);

  PlayerId target_player() const override { return target_; }
  const std::vector<std::string>& feature_names() const override;
  std::string action_signature(const InfosetKey& infoset) const override;
  std::vector<std::string> feature_values(const InfosetKey& infoset) const override;
  std::vector<std::string> action_labels(const InfosetKey& infoset) const override;

  // Typed decode of a raw infoset key (everything below derives from it).
  GoofspielFeatures features(const InfosetKey& infoset) const;

 private:
  int k_;
  PlayerId target_;
};

class GoofspielGame final : public Game {
 public:
  explicit GoofspielGame(GoofspielConfig config);

  std::unique_ptr<GameState> initial_state() const override;
  std::string name() const override;
  int max_actions() const override { return config_.k; }
  // Symmetric game: the equilibrium value is 0 in both utility modes.
  std::optional<double> known_game_value1() const override { return 0.0; }
  const FeatureSpace* feature_space() const override { return &features_; }

  const GoofspielConfig& config() const { return config_; }

 private:
  GoofspielConfig config_;
  GoofspielFeatureSpace features_;
};

}  // namespace gfi
