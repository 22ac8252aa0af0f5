#pragma once

#include <map>
#include <optional>
#include <string>

#include "gfi/game.hpp"
#include "gfi/strategy.hpp"

namespace gfi {

// Exact best response against a fixed opponent strategy.
//
// `value` is the best responder's expected utility at the root. `choices`
// maps each of the responder's infoset keys that is reachable under the
// opponent's strategy to the maximizing action (ties broken toward the
// lowest action id).
struct BestResponseResult {
  PlayerId player = 0;
  double value = 0.0;
  std::map<std::string, ActionId, std::less<>> choices;
};

// `opponent` is consulted at every decision node of the other player; it is
// typically a full StrategyProfile, of which only that player's half is read.
BestResponseResult best_response(const Game& game, const StrategyView& opponent,
                                 PlayerId br_player);

// Plays `choices` deterministically for `player`; infosets absent from the
// map (unreachable when the response was computed) fall back to action 0.
// Must not be consulted at the other player's nodes.
class PureStrategy : public StrategyView {
 public:
  PureStrategy(PlayerId player, std::map<std::string, ActionId, std::less<>> choices)
      : player_(player), choices_(std::move(choices)) {}

  void action_probs(const GameState& state, std::span<double> out) const override;

 private:
  PlayerId player_;
  std::map<std::string, ActionId, std::less<>> choices_;
};

// eps_i = (best response payoff against player i's strategy) minus the
// opponent's game value; both are zero exactly at a Nash equilibrium.
// v_star is the game value for player 1 that was used.
struct ExploitabilityReport {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double avg = 0.0;
  double v_star = 0.0;
};

// Uses, in order of preference: the explicit override, the game's known
// value, or the midpoint estimate (b1 - b2) / 2 from the two best-response
// values (which brackets the true value from both sides).
ExploitabilityReport exploitability(const Game& game, const StrategyView& profile,
                                    std::optional<double> v1_star = std::nullopt);

}  // namespace gfi
