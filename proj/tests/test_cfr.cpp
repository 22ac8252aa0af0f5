#include "gfi/cfr.hpp"

#include <gtest/gtest.h>

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gfi/abstraction.hpp"
#include "gfi/evaluation.hpp"
#include "gfi/game.hpp"
#include "gfi/goofspiel.hpp"
#include "gfi/kuhn.hpp"
#include "gfi/strategy.hpp"
#include "gfi/types.hpp"

namespace gfi {
namespace {

TEST(RegretMatchingTest, PositivePartProportional) {
  double out3[3];
  double r1[3] = {2.0, 0.0, -1.0};
  regret_matching({r1, 3}, {out3, 3});
  EXPECT_DOUBLE_EQ(out3[0], 1.0);
  EXPECT_DOUBLE_EQ(out3[1], 0.0);
  EXPECT_DOUBLE_EQ(out3[2], 0.0);

  double out2[2];
  double r2[2] = {-1.0, -2.0};
  regret_matching({r2, 2}, {out2, 2});
  EXPECT_DOUBLE_EQ(out2[0], 0.5);
  EXPECT_DOUBLE_EQ(out2[1], 0.5);

  double r3[2] = {3.0, 1.0};
  regret_matching({r3, 2}, {out2, 2});
  EXPECT_DOUBLE_EQ(out2[0], 0.75);
  EXPECT_DOUBLE_EQ(out2[1], 0.25);
}

TEST(ScheduleTest, LogSpacedEndsAtTotalAndAscends) {
  std::vector<long long> s = log_spaced_schedule(1000000, 20);
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.back(), 1000000);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1], s[i]);
  EXPECT_LE(s.size(), 21u);
  EXPECT_GE(s.size(), 15u);

  std::vector<long long> tiny = log_spaced_schedule(3, 20);
  EXPECT_EQ(tiny.back(), 3);
  for (std::size_t i = 1; i < tiny.size(); ++i) EXPECT_LT(tiny[i - 1], tiny[i]);
}

TEST(SolverConfigTest, ValidatesScheduleAndIterations) {
  SolverConfig config;
  config.iterations = 0;
  EXPECT_THROW(config.validate(), ConfigError);
  config.iterations = 100;
  config.eval_schedule = {10, 5};
  EXPECT_THROW(config.validate(), ConfigError);
  config.eval_schedule = {10, 200};
  EXPECT_THROW(config.validate(), ConfigError);
  config.eval_schedule = {10, 100};
  EXPECT_NO_THROW(config.validate());
}

TEST(GameTreeIndexTest, KuhnCounts) {
  KuhnGame game;
  GameTreeIndex tree(game, raw_key_fn(), raw_key_fn());
  // 1 chance node, 6 deals x 4 decision nodes, 30 terminals.
  EXPECT_EQ(tree.nodes().size(), 55u);
  EXPECT_EQ(tree.utility1().size(), 30u);
  EXPECT_EQ(tree.infosets(1).size(), 6u);
  EXPECT_EQ(tree.infosets(2).size(), 6u);
  EXPECT_EQ(tree.value_slots(1), 12);
  ASSERT_NE(tree.find(1, "2pb"), nullptr);
  EXPECT_EQ(tree.find(1, "2pb")->num_actions, 2);
  EXPECT_EQ(tree.find(1, "nope"), nullptr);
}

TEST(VanillaCfrTest, KuhnConvergesToKnownValue) {
  KuhnGame game;
  SolverConfig config;
  config.algorithm = Algorithm::kVanillaCfr;
  config.iterations = 100000;
  config.eval_schedule = {10, 1000, 100000};
  Solver solver(game, config);
  ConvergenceLog log;
  solver.run(&log);

  ASSERT_EQ(log.rows.size(), 6u);
  const ConvergenceRow& first = log.rows[0];
  const ConvergenceRow& last = log.rows[log.rows.size() - 2];
  EXPECT_EQ(last.iteration, 100000);
  EXPECT_LT(last.exploitability, first.exploitability);
  EXPECT_LT(last.exploitability, 0.005);
  EXPECT_NEAR(last.expected_value, -1.0 / 18.0, 0.005);

  StrategyProfile profile = solver.extract_profile();
  EXPECT_EQ(profile.entry_count(), 12u);
  ExploitabilityReport report = exploitability(game, profile, -1.0 / 18.0);
  EXPECT_LT(report.avg, 0.005);
  // Known equilibrium structure: player 1 never bets with card 2 initially,
  // always calls a pass-bet holding 3.
  EXPECT_NEAR((*profile.find(1, "2"))[0], 1.0, 0.02);
  EXPECT_NEAR((*profile.find(1, "3pb"))[1], 1.0, 0.02);
  EXPECT_NEAR((*profile.find(2, "3b"))[1], 1.0, 0.02);
  EXPECT_NEAR((*profile.find(2, "2b"))[0], 2.0 / 3.0, 0.03);
}

TEST(VanillaCfrTest, GoofspielK3NearEquilibrium) {
  GoofspielGame game({3, 1, UtilityMode::kDifferential});
  SolverConfig config;
  config.algorithm = Algorithm::kVanillaCfr;
  config.iterations = 10000;
  Solver solver(game, config);
  solver.run();
  StrategyProfile profile = solver.extract_profile();
  ExploitabilityReport report = exploitability(game, profile);
  EXPECT_DOUBLE_EQ(report.v_star, 0.0);  // symmetric game, known value
  EXPECT_LT(report.avg, 0.01);
  EXPECT_NEAR(expected_value(game, profile, 1), 0.0, 0.01);
}

TEST(McCfrTest, KuhnConvergesUnderSampling) {
  KuhnGame game;
  SolverConfig config;
  config.algorithm = Algorithm::kExternalSamplingMccfr;
  config.iterations = 200000;
  config.seed = 5;
  Solver solver(game, config);
  solver.run();
  ExploitabilityReport report =
      exploitability(game, solver.average_view(), -1.0 / 18.0);
  EXPECT_LT(report.avg, 0.02);
}

TEST(McCfrTest, SeedDeterminismAndSensitivity) {
  KuhnGame game;
  SolverConfig config;
  config.algorithm = Algorithm::kExternalSamplingMccfr;
  config.iterations = 20000;
  config.seed = 11;
  Solver a(game, config);
  a.run();
  Solver b(game, config);
  b.run();
  EXPECT_EQ(a.extract_profile().to_json_string(), b.extract_profile().to_json_string());

  config.seed = 12;
  Solver c(game, config);
  c.run();
  EXPECT_NE(a.extract_profile().to_json_string(), c.extract_profile().to_json_string());
}

// Wrapper game that counts, per acting player, how many children were
// expanded and how many infoset lookups occurred. External sampling must
// expand every action at the updating player's nodes and exactly one
// elsewhere.
struct TraversalCounters {
  long long child_calls[3] = {0, 0, 0};
  long long infoset_queries[3] = {0, 0, 0};
  void reset() {
    for (int i = 0; i < 3; ++i) child_calls[i] = infoset_queries[i] = 0;
  }
};

class InstrumentedState final : public GameState {
 public:
  InstrumentedState(std::unique_ptr<GameState> inner, TraversalCounters* counters)
      : inner_(std::move(inner)), counters_(counters) {}

  bool is_terminal() const override { return inner_->is_terminal(); }
  PlayerId player_to_act() const override { return inner_->player_to_act(); }
  int num_actions() const override { return inner_->num_actions(); }
  void chance_probs(std::span<double> out) const override { inner_->chance_probs(out); }
  ActionId sample_chance(double u) const override { return inner_->sample_chance(u); }
  double utility(PlayerId player) const override { return inner_->utility(player); }
  std::string action_label(ActionId action) const override {
    return inner_->action_label(action);
  }
  std::unique_ptr<GameState> child(ActionId action) const override {
    counters_->child_calls[inner_->player_to_act()]++;
    return std::make_unique<InstrumentedState>(inner_->child(action), counters_);
  }
  std::string infoset_string() const override {
    counters_->infoset_queries[inner_->player_to_act()]++;
    return inner_->infoset_string();
  }

 private:
  std::unique_ptr<GameState> inner_;
  TraversalCounters* counters_;
};

class InstrumentedKuhn final : public Game {
 public:
  explicit InstrumentedKuhn(TraversalCounters* counters) : counters_(counters) {}
  std::unique_ptr<GameState> initial_state() const override {
    return std::make_unique<InstrumentedState>(inner_.initial_state(), counters_);
  }
  std::string name() const override { return inner_.name(); }
  int max_actions() const override { return inner_.max_actions(); }

 private:
  KuhnGame inner_;
  TraversalCounters* counters_;
};

TEST(McCfrTest, ExternalSamplingExpandsAllOwnActionsAndSamplesOthers) {
  TraversalCounters counters;
  InstrumentedKuhn game(&counters);
  ExternalSamplingMccfr engine(game, raw_key_fn(), raw_key_fn(), 3);

  // t = 0 updates player 1: every player-1 node expands both actions, every
  // player-2 node and the chance root expand exactly one child.
  engine.advance(1);
  EXPECT_EQ(counters.child_calls[0], 1);
  EXPECT_GT(counters.infoset_queries[1], 0);
  EXPECT_EQ(counters.child_calls[1], 2 * counters.infoset_queries[1]);
  EXPECT_EQ(counters.child_calls[2], counters.infoset_queries[2]);

  counters.reset();
  engine.advance(1);  // t = 1 updates player 2
  EXPECT_EQ(counters.child_calls[0], 1);
  EXPECT_GT(counters.infoset_queries[2], 0);
  EXPECT_EQ(counters.child_calls[2], 2 * counters.infoset_queries[2]);
  EXPECT_EQ(counters.child_calls[1], counters.infoset_queries[1]);
}

TEST(SolverTest, AbstractionSharesStrategyAcrossClassMembers) {
  GoofspielGame game({3, 1, UtilityMode::kDifferential});
  const FeatureSpace& space = *game.feature_space();
  SolverConfig config;
  config.algorithm = Algorithm::kVanillaCfr;
  config.iterations = 500;
  config.target_abstraction = FeatureSubset::empty(space);
  Solver solver(game, config);
  solver.run();
  StrategyProfile profile = solver.extract_profile();

  // All target infosets with one signature share one abstract bucket, hence
  // bit-identical lifted strategies.
  std::unordered_map<std::string, std::vector<double>> by_signature;
  int compared = 0;
  for (const auto& [infoset, n] : enumerate_infosets(game, 1)) {
    (void)n;
    std::string sig = space.action_signature(infoset);
    const std::vector<double>& probs = *profile.find(1, infoset.key);
    auto [it, inserted] = by_signature.emplace(sig, probs);
    if (!inserted) {
      EXPECT_EQ(it->second, probs) << "signature " << sig;
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(SolverTest, AbstractionRequiresFeatureSpace) {
  KuhnGame game;
  SolverConfig config;
  config.algorithm = Algorithm::kVanillaCfr;
  config.iterations = 10;
  config.target_abstraction = FeatureSubset(0, 4);
  EXPECT_THROW(Solver(game, config), ConfigError);
}

TEST(ConvergenceLogTest, CsvShapeAndSchema) {
  ConvergenceLog log;
  log.rows.push_back({10, 1, -0.5, 0.25});
  log.rows.push_back({10, 2, 0.5, 0.125});
  std::string csv = log.to_csv();
  EXPECT_EQ(csv.rfind("# gfi.convergence/1\niteration,player,expected_value,exploitability\n", 0),
            0u);
  EXPECT_NE(csv.find("10,1,-0.5,0.25\n"), std::string::npos);
  EXPECT_NE(csv.find("10,2,0.5,0.125\n"), std::string::npos);
}

TEST(AlgorithmTest, ParseAndName) {
  EXPECT_EQ(parse_algorithm("vanilla_cfr"), Algorithm::kVanillaCfr);
  EXPECT_EQ(parse_algorithm("external_mccfr"), Algorithm::kExternalSamplingMccfr);
  EXPECT_THROW(parse_algorithm("cfr+"), ConfigError);
  EXPECT_EQ(algorithm_name(Algorithm::kVanillaCfr), "vanilla_cfr");
  EXPECT_EQ(algorithm_name(Algorithm::kExternalSamplingMccfr), "external_mccfr");
}

}  // namespace
}  // namespace gfi
