#include "gfi/kuhn.hpp"

#include <algorithm>
#include <array>

#include "gfi/types.hpp"

namespace gfi {
namespace {

// Ordered deals (card1, card2), enumerated in a fixed order.
constexpr std::array<std::array<int, 2>, 6> kDeals = {
    {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}}};

bool betting_over(const std::string& bets) {
  return bets == "pp" || bets == "bp" || bets == "bb" || bets == "pbp" || bets == "pbb";
}

}  // namespace

std::unique_ptr<GameState> KuhnGame::initial_state() const {
  return std::make_unique<KuhnState>();
}

KuhnState::KuhnState(int card1, int card2, std::string bets)
    : card_{card1, card2}, bets_(std::move(bets)) {}

bool KuhnState::is_terminal() const { return card_[0] != 0 && betting_over(bets_); }

PlayerId KuhnState::player_to_act() const {
  if (card_[0] == 0) return kChancePlayer;
  return static_cast<PlayerId>(bets_.size() % 2 + 1);
}

int KuhnState::num_actions() const { return card_[0] == 0 ? 6 : 2; }

void KuhnState::chance_probs(std::span<double> out) const {
  std::fill(out.begin(), out.end(), 1.0 / 6.0);
}

ActionId KuhnState::sample_chance(double u) const {
  int a = static_cast<int>(u * 6);
  return a < 6 ? a : 5;
}

double KuhnState::utility(PlayerId player) const {
  // Showdown stake is 1 after pp, 2 after a called bet; a fold pays the
  // bettor 1.
  int u1;
  if (bets_ == "bp") {
    u1 = 1;
  } else if (bets_ == "pbp") {
    u1 = -1;
  } else {
    int stake = bets_ == "pp" ? 1 : 2;
    u1 = card_[0] > card_[1] ? stake : -stake;
  }
  return static_cast<double>(player == 1 ? u1 : -u1);
}

std::unique_ptr<GameState> KuhnState::child(ActionId action) const {
  if (is_terminal()) throw UsageError("child() called on terminal kuhn state");
  if (action < 0 || action >= num_actions()) {
    throw UsageError("illegal action " + std::to_string(action) + " at kuhn state");
  }
  if (card_[0] == 0) {
    return std::make_unique<KuhnState>(kDeals[action][0], kDeals[action][1], "");
  }
  return std::make_unique<KuhnState>(card_[0], card_[1],
                                     bets_ + (action == 0 ? 'p' : 'b'));
}

std::string KuhnState::infoset_string() const {
  PlayerId p = player_to_act();
  std::string s;
  s.push_back(static_cast<char>('0' + card_[p - 1]));
  s += bets_;
  return s;
}

std::string KuhnState::action_label(ActionId action) const {
  if (card_[0] == 0) {
    return "d" + std::to_string(kDeals[action][0]) + std::to_string(kDeals[action][1]);
  }
  return action == 0 ? "p" : "b";
}

}  // namespace gfi
