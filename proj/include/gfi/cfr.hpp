#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gfi/abstraction.hpp"
#include "gfi/game.hpp"
#include "gfi/strategy.hpp"

namespace gfi {

enum class Algorithm { kVanillaCfr, kExternalSamplingMccfr };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm algorithm);

struct SolverConfig {
  Algorithm algorithm = Algorithm::kExternalSamplingMccfr;
  long long iterations = 1;
  std::uint64_t seed = 1;
  // When set, the feature-space target player's regrets and strategies are
  // keyed by abstract class; the opponent always plays unabstracted.
  std::optional<FeatureSubset> target_abstraction;
  // Iteration checkpoints (ascending) at which convergence data is recorded.
  std::vector<long long> eval_schedule;

  void validate() const;
};

// Positive-part proportional strategy; uniform when no regret is positive.
void regret_matching(std::span<const double> regret, std::span<double> out);

// `count` checkpoints spaced geometrically over [1, iterations], always
// ending at `iterations` itself.
std::vector<long long> log_spaced_schedule(long long iterations, int count);

struct ConvergenceRow {
  long long iteration = 0;
  PlayerId player = 0;
  double expected_value = 0.0;
  double exploitability = 0.0;
};

struct ConvergenceLog {
  std::vector<ConvergenceRow> rows;

  std::string to_csv() const;
  void save(const std::filesystem::path& path) const;
};

// Iteration engine shared by both algorithms. Keys are bucket keys: raw
// infoset strings, or abstract class keys for the abstracted player.
class CfrEngine {
 public:
  virtual ~CfrEngine() = default;

  virtual void advance(long long iterations) = 0;
  virtual long long iteration() const = 0;

  // Writes the normalized average strategy for a bucket into `out`; returns
  // false (leaving `out` untouched) for buckets never visited.
  virtual bool average_probs(PlayerId player, std::string_view bucket,
                             std::span<double> out) const = 0;

  virtual std::size_t table_size(PlayerId player) const = 0;
};

// Facade: owns the engine, drives checkpoints, lifts the average strategy
// back to raw infosets.
class Solver {
 public:
  using CheckpointFn = std::function<void(long long iteration, const StrategyView& average)>;

  Solver(const Game& game, SolverConfig config);
  ~Solver();

  // Runs the configured number of iterations. At each eval_schedule
  // checkpoint: appends (iteration, player, expected_value, exploitability)
  // rows to `log` if non-null, and invokes `on_checkpoint` if set.
  void run(ConvergenceLog* log = nullptr, const CheckpointFn& on_checkpoint = {});

  // Average strategy over raw infosets (abstracted buckets are shared by all
  // of their members; unvisited buckets fall back to uniform).
  const StrategyView& average_view() const;

  // Materializes average_view() over every infoset of both players.
  StrategyProfile extract_profile() const;

  long long iteration() const;
  const SolverConfig& config() const { return config_; }
  const Game& game() const { return game_; }
  const CfrEngine& engine() const { return *engine_; }

 private:
  const Game& game_;
  SolverConfig config_;
  KeyFn key_fn_[kNumPlayers];
  std::unique_ptr<CfrEngine> engine_;
  std::unique_ptr<StrategyView> average_view_;
};

// Exposed for direct use in tests.

class GameTreeIndex {
 public:
  GameTreeIndex(const Game& game, const KeyFn& key1, const KeyFn& key2);

  static constexpr int8_t kTerminal = -1;

  struct Node {
    std::int32_t first_child = -1;
    // Terminal: index into utility1(); chance: offset into chance probs;
    // decision: infoset slot of the acting player.
    std::int32_t payload = -1;
    std::int16_t num_actions = 0;
    std::int8_t player = kTerminal;
  };

  struct InfosetSlot {
    std::string bucket;
    int num_actions = 0;
    int value_offset = 0;  // into a per-player flat array of action values
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<double>& chance_probs() const { return chance_probs_; }
  const std::vector<double>& utility1() const { return utility1_; }
  const std::vector<InfosetSlot>& infosets(PlayerId player) const {
    return infosets_[player - 1];
  }
  int value_slots(PlayerId player) const { return value_slots_[player - 1]; }
  const InfosetSlot* find(PlayerId player, std::string_view bucket) const;

 private:
  std::vector<Node> nodes_;
  std::vector<double> chance_probs_;
  std::vector<double> utility1_;
  std::vector<InfosetSlot> infosets_[kNumPlayers];
  std::unordered_map<std::string, int, StringHash, StringEq> index_[kNumPlayers];
  int value_slots_[kNumPlayers] = {0, 0};
};

class VanillaCfr final : public CfrEngine {
 public:
  VanillaCfr(const Game& game, const KeyFn& key1, const KeyFn& key2);

  void advance(long long iterations) override;
  long long iteration() const override { return t_; }
  bool average_probs(PlayerId player, std::string_view bucket,
                     std::span<double> out) const override;
  std::size_t table_size(PlayerId player) const override;

 private:
  double pass(PlayerId updating, std::int32_t node, double reach_me, double reach_other);

  GameTreeIndex tree_;
  std::vector<double> regret_[kNumPlayers];
  std::vector<double> strat_sum_[kNumPlayers];
  long long t_ = 0;
};

class ExternalSamplingMccfr final : public CfrEngine {
 public:
  ExternalSamplingMccfr(const Game& game, const KeyFn& key1, const KeyFn& key2,
                        std::uint64_t seed);

  void advance(long long timesteps) override;
  long long iteration() const override { return t_; }
  bool average_probs(PlayerId player, std::string_view bucket,
                     std::span<double> out) const override;
  std::size_t table_size(PlayerId player) const override;

  struct Entry {
    std::vector<double> regret;
    std::vector<double> strat_sum;
    long long visits = 0;
  };

 private:
  double traverse(const GameState& state, PlayerId updating);
  Entry& entry_for(PlayerId player, std::string_view bucket, int num_actions);

  const Game& game_;
  KeyFn key_[kNumPlayers];
  std::unordered_map<std::string, Entry, StringHash, StringEq> table_[kNumPlayers];
  std::mt19937_64 rng_;
  long long t_ = 0;
};

}  // namespace gfi
