#include "gfi/evaluation.hpp"

#include <memory>
#include <utility>
#include <vector>

#include "gfi/types.hpp"

namespace gfi {

namespace {

constexpr int kMaxActionsBound = 16;

// Computes a best response by first grouping the responder's reachable
// histories per infoset together with their external reach (chance times
// opponent), then lazily resolving the maximizing action per infoset on
// demand. Histories below the responder's own nodes keep the same external
// reach regardless of the responder's play, which is what makes the
// per-infoset argmax sound.
class BestResponder {
 public:
  BestResponder(const Game& game, const StrategyView& opponent, PlayerId br_player)
      : game_(game), opponent_(opponent), me_(br_player) {
    if (!is_contestant(br_player)) {
      throw UsageError("best response player must be 1 or 2");
    }
  }

  BestResponseResult run() {
    collect(game_.initial_state(), 1.0);
    BestResponseResult result;
    result.player = me_;
    result.value = value(*game_.initial_state());
    result.choices = std::move(choice_);
    return result;
  }

 private:
  struct Member {
    std::unique_ptr<GameState> state;
    double reach = 0.0;
  };

  void collect(std::unique_ptr<GameState> state, double reach) {
    if (state->is_terminal()) return;
    const int n = state->num_actions();
    double probs[kMaxActionsBound];
    if (state->is_chance()) {
      state->chance_probs({probs, static_cast<size_t>(n)});
    } else if (state->player_to_act() != me_) {
      opponent_.action_probs(*state, {probs, static_cast<size_t>(n)});
    } else {
      for (ActionId a = 0; a < n; ++a) collect(state->child(a), reach);
      members_[infoset_key(*state, me_).key].push_back(Member{std::move(state), reach});
      return;
    }
    for (ActionId a = 0; a < n; ++a) {
      if (probs[a] <= 0.0) continue;
      collect(state->child(a), reach * probs[a]);
    }
  }

  ActionId choose(const std::string& key) {
    auto it = choice_.find(key);
    if (it != choice_.end()) return it->second;
    const std::vector<Member>& members = members_.at(key);
    const int n = members.front().state->num_actions();
    ActionId best = 0;
    double best_q = 0.0;
    for (ActionId a = 0; a < n; ++a) {
      double q = 0.0;
      for (const Member& member : members) {
        q += member.reach * value(*member.state->child(a));
      }
      if (a == 0 || q > best_q) {
        best = a;
        best_q = q;
      }
    }
    choice_.emplace(key, best);
    return best;
  }

  double value(const GameState& state) {
    if (state.is_terminal()) return state.utility(me_);
    const int n = state.num_actions();
    if (state.player_to_act() == me_) {
      return value(*state.child(choose(infoset_key(state, me_).key)));
    }
    double probs[kMaxActionsBound];
    if (state.is_chance()) {
      state.chance_probs({probs, static_cast<size_t>(n)});
    } else {
      opponent_.action_probs(state, {probs, static_cast<size_t>(n)});
    }
    double total = 0.0;
    for (ActionId a = 0; a < n; ++a) {
      if (probs[a] <= 0.0) continue;
      total += probs[a] * value(*state.child(a));
    }
    return total;
  }

  const Game& game_;
  const StrategyView& opponent_;
  PlayerId me_;
  std::map<std::string, std::vector<Member>, std::less<>> members_;
  std::map<std::string, ActionId, std::less<>> choice_;
};

}  // namespace

BestResponseResult best_response(const Game& game, const StrategyView& opponent,
                                 PlayerId br_player) {
  return BestResponder(game, opponent, br_player).run();
}

void PureStrategy::action_probs(const GameState& state, std::span<double> out) const {
  if (state.player_to_act() != player_) {
    throw UsageError("pure strategy consulted at another player's node");
  }
  std::fill(out.begin(), out.end(), 0.0);
  auto it = choices_.find(infoset_key(state, player_).key);
  ActionId a = it == choices_.end() ? 0 : it->second;
  out[a] = 1.0;
}

ExploitabilityReport exploitability(const Game& game, const StrategyView& profile,
                                    std::optional<double> v1_star) {
  const double b2 = best_response(game, profile, 2).value;
  const double b1 = best_response(game, profile, 1).value;
  double v1;
  if (v1_star.has_value()) {
    v1 = *v1_star;
  } else if (std::optional<double> known = game.known_game_value1()) {
    v1 = *known;
  } else {
    v1 = 0.5 * (b1 - b2);
  }
  ExploitabilityReport report;
  report.v_star = v1;
  report.eps1 = b2 + v1;
  report.eps2 = b1 - v1;
  report.avg = 0.5 * (report.eps1 + report.eps2);
  return report;
}

}  // namespace gfi
