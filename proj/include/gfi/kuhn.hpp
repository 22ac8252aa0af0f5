#pragma once

#include <memory>
#include <string>

#include "gfi/game.hpp"

namespace gfi {

// Standard 3-card Kuhn poker, used as a solver calibration game. Both players
// ante 1. One chance node deals an ordered card pair, then each player may
// pass or bet 1; a pass after a bet folds. Equilibrium value for player 1 is
// -1/18.
class KuhnGame final : public Game {
 public:
  std::unique_ptr<GameState> initial_state() const override;
  std::string name() const override { return "kuhn"; }
  int max_actions() const override { return 6; }  // the deal node
};

class KuhnState final : public GameState {
 public:
  KuhnState() = default;
  KuhnState(int card1, int card2, std::string bets);

  bool is_terminal() const override;
  PlayerId player_to_act() const override;
  int num_actions() const override;
  void chance_probs(std::span<double> out) const override;
  ActionId sample_chance(double u) const override;
  double utility(PlayerId player) const override;
  std::unique_ptr<GameState> child(ActionId action) const override;
  std::string infoset_string() const override;
  std::string action_label(ActionId action) const override;

 private:
  int card_[2] = {0, 0};  // 0 = not dealt
  std::string bets_;      // 'p' = pass/check, 'b' = bet
};

}  // namespace gfi
