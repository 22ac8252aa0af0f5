#include "gfi/game.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "gfi/strategy.hpp"

namespace gfi {

namespace {
constexpr int kMaxActionsBound = 16;
}

ActionId GameState::sample_chance(double u) const {
  std::array<double, kMaxActionsBound> buf;
  int n = num_actions();
  chance_probs(std::span<double>(buf.data(), n));
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    acc += buf[a];
    if (u < acc) return a;
  }
  return n - 1;
}

InfosetKey infoset_key(const GameState& state, PlayerId player) {
  if (state.is_terminal()) throw UsageError("infoset_key called at a terminal node");
  if (state.player_to_act() == kChancePlayer) {
    throw UsageError("infoset_key called at a chance node");
  }
  if (state.player_to_act() != player) {
    throw UsageError("infoset_key: player " + std::to_string(player) +
                     " is not to act at this state");
  }
  return InfosetKey{player, state.infoset_string()};
}

namespace {

void enumerate_rec(const GameState& state, PlayerId player,
                   std::map<std::string, int>& found) {
  if (state.is_terminal()) return;
  int n = state.num_actions();
  if (!state.is_chance() && state.player_to_act() == player) {
    auto [it, inserted] = found.emplace(state.infoset_string(), n);
    if (!inserted && it->second != n) {
      throw UsageError("infoset '" + it->first + "' seen with inconsistent action counts");
    }
  }
  for (int a = 0; a < n; ++a) enumerate_rec(*state.child(a), player, found);
}

}  // namespace

std::vector<std::pair<InfosetKey, int>> enumerate_infosets(const Game& game,
                                                           PlayerId player) {
  if (!is_contestant(player)) throw UsageError("enumerate_infosets: player must be 1 or 2");
  std::map<std::string, int> found;
  enumerate_rec(*game.initial_state(), player, found);
  std::vector<std::pair<InfosetKey, int>> out;
  out.reserve(found.size());
  for (auto& [key, n] : found) out.emplace_back(InfosetKey{player, key}, n);
  return out;
}

namespace {

double value_rec(const GameState& state, const StrategyView& profile, PlayerId player) {
  if (state.is_terminal()) return state.utility(player);
  int n = state.num_actions();
  std::array<double, kMaxActionsBound> probs;
  std::span<double> probs_span(probs.data(), n);
  if (state.is_chance()) {
    state.chance_probs(probs_span);
  } else {
    profile.action_probs(state, probs_span);
  }
  double v = 0.0;
  for (int a = 0; a < n; ++a) {
    if (probs[a] == 0.0) continue;
    v += probs[a] * value_rec(*state.child(a), profile, player);
  }
  return v;
}

}  // namespace

double expected_value(const Game& game, const StrategyView& profile, PlayerId player) {
  if (!is_contestant(player)) throw UsageError("expected_value: player must be 1 or 2");
  return value_rec(*game.initial_state(), profile, player);
}

}  // namespace gfi
