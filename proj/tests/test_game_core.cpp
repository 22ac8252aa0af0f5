#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <string>

#include "gfi/game.hpp"
#include "gfi/goofspiel.hpp"
#include "gfi/kuhn.hpp"
#include "gfi/strategy.hpp"
#include "gfi/types.hpp"

namespace gfi {
namespace {

int count_terminals(const GameState& state) {
  if (state.is_terminal()) return 1;
  int total = 0;
  for (ActionId a = 0; a < state.num_actions(); ++a) {
    total += count_terminals(*state.child(a));
  }
  return total;
}

void check_zero_sum(const GameState& state) {
  if (state.is_terminal()) {
    EXPECT_DOUBLE_EQ(state.utility(1) + state.utility(2), 0.0);
    return;
  }
  for (ActionId a = 0; a < state.num_actions(); ++a) {
    check_zero_sum(*state.child(a));
  }
}

TEST(KuhnGame, TerminalCountAndZeroSum) {
  KuhnGame game;
  auto root = game.initial_state();
  EXPECT_EQ(count_terminals(*root), 30);
  check_zero_sum(*root);
}

TEST(KuhnGame, InfosetCounts) {
  KuhnGame game;
  EXPECT_EQ(enumerate_infosets(game, 1).size(), 6u);
  EXPECT_EQ(enumerate_infosets(game, 2).size(), 6u);
}

TEST(GoofspielGame, InfosetCountsK3) {
  GoofspielConfig config;
  config.k = 3;
  GoofspielGame game(config);
  EXPECT_EQ(enumerate_infosets(game, 1).size(), 273u);
  EXPECT_EQ(enumerate_infosets(game, 2).size(), 273u);
}

TEST(GoofspielGame, UniformEvZeroBySymmetry) {
  GoofspielConfig config;
  config.k = 3;
  GoofspielGame game(config);
  StrategyProfile empty_profile;
  EXPECT_NEAR(expected_value(game, empty_profile, 1), 0.0, 1e-12);
}

}  // namespace
}  // namespace gfi
