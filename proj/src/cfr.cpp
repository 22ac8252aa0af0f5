#include "gfi/cfr.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

#include "gfi/evaluation.hpp"
#include "gfi/features.hpp"
#include "gfi/io_util.hpp"
#include "gfi/rng.hpp"
#include "gfi/types.hpp"

namespace gfi {

namespace {
constexpr int kMaxActionsBound = 16;
constexpr const char* kConvergenceSchema = "gfi.convergence/1";
// Stream id separating solver sampling from other consumers of a master seed.
constexpr std::uint64_t kSolverStream = 0x5f01;
}  // namespace

Algorithm parse_algorithm(const std::string& name) {
  if (name == "vanilla_cfr") return Algorithm::kVanillaCfr;
  if (name == "external_mccfr") return Algorithm::kExternalSamplingMccfr;
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected vanilla_cfr or external_mccfr)");
}

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kVanillaCfr:
      return "vanilla_cfr";
    case Algorithm::kExternalSamplingMccfr:
      return "external_mccfr";
  }
  throw UsageError("invalid algorithm value");
}

void SolverConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  long long prev = 0;
  for (long long c : eval_schedule) {
    if (c <= prev || c > iterations) {
      throw ConfigError("eval_schedule must be ascending within [1, iterations]");
    }
    prev = c;
  }
}

void regret_matching(std::span<const double> regret, std::span<double> out) {
  double total = 0.0;
  for (std::size_t i = 0; i < regret.size(); ++i) {
    double p = regret[i] > 0.0 ? regret[i] : 0.0;
    out[i] = p;
    total += p;
  }
  if (total > 0.0) {
    for (double& p : out) p /= total;
  } else {
    double u = 1.0 / static_cast<double>(out.size());
    std::fill(out.begin(), out.end(), u);
  }
}

std::vector<long long> log_spaced_schedule(long long iterations, int count) {
  if (iterations < 1 || count < 1) throw UsageError("bad schedule parameters");
  std::vector<long long> out;
  const double log_total = std::log(static_cast<double>(iterations));
  for (int i = 1; i <= count; ++i) {
    double x = std::exp(log_total * static_cast<double>(i) / count);
    long long v = std::llround(x);
    v = std::clamp(v, 1ll, iterations);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  if (out.back() != iterations) out.push_back(iterations);
  return out;
}

std::string ConvergenceLog::to_csv() const {
  std::string out = "# ";
  out += kConvergenceSchema;
  out += "\niteration,player,expected_value,exploitability\n";
  for (const ConvergenceRow& row : rows) {
    out += std::to_string(row.iteration);
    out += ',';
    out += std::to_string(row.player);
    out += ',';
    out += format_double(row.expected_value);
    out += ',';
    out += format_double(row.exploitability);
    out += '\n';
  }
  return out;
}

void ConvergenceLog::save(const std::filesystem::path& path) const {
  write_file_atomic(path, to_csv());
}

// ---------------------------------------------------------------------------
// GameTreeIndex

GameTreeIndex::GameTreeIndex(const Game& game, const KeyFn& key1, const KeyFn& key2) {
  const KeyFn* keys[kNumPlayers] = {&key1, &key2};
  std::deque<std::unique_ptr<GameState>> frontier;
  frontier.push_back(game.initial_state());
  nodes_.emplace_back();
  std::int32_t next = 0;
  double probs[kMaxActionsBound];
  while (!frontier.empty()) {
    std::unique_ptr<GameState> state = std::move(frontier.front());
    frontier.pop_front();
    Node& node = nodes_[next++];
    if (state->is_terminal()) {
      node.player = kTerminal;
      node.payload = static_cast<std::int32_t>(utility1_.size());
      utility1_.push_back(state->utility(1));
      continue;
    }
    const int n = state->num_actions();
    if (n > kMaxActionsBound) throw ResourceError("action count exceeds solver bound");
    node.num_actions = static_cast<std::int16_t>(n);
    node.first_child = static_cast<std::int32_t>(nodes_.size());
    const PlayerId p = state->player_to_act();
    node.player = static_cast<std::int8_t>(p);
    if (p == kChancePlayer) {
      node.payload = static_cast<std::int32_t>(chance_probs_.size());
      state->chance_probs({probs, static_cast<size_t>(n)});
      chance_probs_.insert(chance_probs_.end(), probs, probs + n);
    } else {
      std::string bucket = (*keys[p - 1])(infoset_key(*state, p));
      auto [it, inserted] =
          index_[p - 1].emplace(std::move(bucket), static_cast<int>(infosets_[p - 1].size()));
      if (inserted) {
        InfosetSlot slot;
        slot.bucket = it->first;
        slot.num_actions = n;
        slot.value_offset = value_slots_[p - 1];
        value_slots_[p - 1] += n;
        infosets_[p - 1].push_back(std::move(slot));
      } else if (infosets_[p - 1][it->second].num_actions != n) {
        throw UsageError("bucket '" + it->first + "' mixes action counts");
      }
      node.payload = it->second;
    }
    nodes_.resize(nodes_.size() + n);
    for (ActionId a = 0; a < n; ++a) frontier.push_back(state->child(a));
  }
}

const GameTreeIndex::InfosetSlot* GameTreeIndex::find(PlayerId player,
                                                      std::string_view bucket) const {
  const auto& index = index_[player - 1];
  auto it = index.find(bucket);
  return it == index.end() ? nullptr : &infosets_[player - 1][it->second];
}

// ---------------------------------------------------------------------------
// VanillaCfr

VanillaCfr::VanillaCfr(const Game& game, const KeyFn& key1, const KeyFn& key2)
    : tree_(game, key1, key2) {
  for (PlayerId p = 1; p <= 2; ++p) {
    regret_[p - 1].assign(tree_.value_slots(p), 0.0);
    strat_sum_[p - 1].assign(tree_.value_slots(p), 0.0);
  }
}

void VanillaCfr::advance(long long iterations) {
  for (long long i = 0; i < iterations; ++i) {
    pass(1, 0, 1.0, 1.0);
    pass(2, 0, 1.0, 1.0);
    ++t_;
  }
}

double VanillaCfr::pass(PlayerId updating, std::int32_t node_id, double reach_me,
                        double reach_other) {
  const GameTreeIndex::Node& node = tree_.nodes()[node_id];
  if (node.player == GameTreeIndex::kTerminal) {
    double u1 = tree_.utility1()[node.payload];
    return updating == 1 ? u1 : -u1;
  }
  const int n = node.num_actions;
  if (node.player == kChancePlayer) {
    const double* probs = tree_.chance_probs().data() + node.payload;
    double value = 0.0;
    for (int a = 0; a < n; ++a) {
      value += probs[a] * pass(updating, node.first_child + a, reach_me, reach_other * probs[a]);
    }
    return value;
  }
  const PlayerId p = node.player;
  const GameTreeIndex::InfosetSlot& slot = tree_.infosets(p)[node.payload];
  double* regret = regret_[p - 1].data() + slot.value_offset;
  double probs[kMaxActionsBound];
  regret_matching({regret, static_cast<size_t>(n)}, {probs, static_cast<size_t>(n)});
  if (p != updating) {
    double value = 0.0;
    for (int a = 0; a < n; ++a) {
      value += probs[a] * pass(updating, node.first_child + a, reach_me, reach_other * probs[a]);
    }
    return value;
  }
  double child_value[kMaxActionsBound];
  double value = 0.0;
  for (int a = 0; a < n; ++a) {
    child_value[a] = pass(updating, node.first_child + a, reach_me * probs[a], reach_other);
    value += probs[a] * child_value[a];
  }
  double* strat_sum = strat_sum_[p - 1].data() + slot.value_offset;
  for (int a = 0; a < n; ++a) {
    regret[a] += reach_other * (child_value[a] - value);
    strat_sum[a] += reach_me * probs[a];
  }
  return value;
}

bool VanillaCfr::average_probs(PlayerId player, std::string_view bucket,
                               std::span<double> out) const {
  const GameTreeIndex::InfosetSlot* slot = tree_.find(player, bucket);
  if (slot == nullptr) return false;
  const double* sum = strat_sum_[player - 1].data() + slot->value_offset;
  double total = 0.0;
  for (int a = 0; a < slot->num_actions; ++a) total += sum[a];
  if (total <= 0.0) {
    double u = 1.0 / static_cast<double>(out.size());
    std::fill(out.begin(), out.end(), u);
    return true;
  }
  for (int a = 0; a < slot->num_actions; ++a) out[a] = sum[a] / total;
  return true;
}

std::size_t VanillaCfr::table_size(PlayerId player) const {
  return tree_.infosets(player).size();
}

// ---------------------------------------------------------------------------
// ExternalSamplingMccfr

ExternalSamplingMccfr::ExternalSamplingMccfr(const Game& game, const KeyFn& key1,
                                             const KeyFn& key2, std::uint64_t seed)
    : game_(game), key_{key1, key2}, rng_(derive_seed(seed, kSolverStream)) {}

void ExternalSamplingMccfr::advance(long long timesteps) {
  for (long long i = 0; i < timesteps; ++i) {
    PlayerId updating = 1 + static_cast<PlayerId>(t_ % 2);
    traverse(*game_.initial_state(), updating);
    ++t_;
  }
}

ExternalSamplingMccfr::Entry& ExternalSamplingMccfr::entry_for(PlayerId player,
                                                               std::string_view bucket,
                                                               int num_actions) {
  auto& table = table_[player - 1];
  auto it = table.find(bucket);
  if (it == table.end()) {
    it = table.emplace(std::string(bucket), Entry{}).first;
    it->second.regret.assign(num_actions, 0.0);
    it->second.strat_sum.assign(num_actions, 0.0);
  }
  return it->second;
}

double ExternalSamplingMccfr::traverse(const GameState& state, PlayerId updating) {
  if (state.is_terminal()) return state.utility(updating);
  const int n = state.num_actions();
  if (state.is_chance()) {
    ActionId a = state.sample_chance(uniform01(rng_));
    return traverse(*state.child(a), updating);
  }
  const PlayerId p = state.player_to_act();
  Entry& entry = entry_for(p, key_[p - 1](infoset_key(state, p)), n);
  double probs[kMaxActionsBound];
  regret_matching(entry.regret, {probs, static_cast<size_t>(n)});
  if (p != updating) {
    // Simple averaging: opponent nodes are sampled on-policy, so accumulating
    // the current policy here yields the reach-weighted average strategy.
    for (ActionId a = 0; a < n; ++a) entry.strat_sum[a] += probs[a];
    double u = uniform01(rng_);
    double cum = 0.0;
    ActionId chosen = n - 1;
    for (ActionId a = 0; a < n; ++a) {
      cum += probs[a];
      if (u < cum) {
        chosen = a;
        break;
      }
    }
    return traverse(*state.child(chosen), updating);
  }
  double child_value[kMaxActionsBound];
  double value = 0.0;
  for (ActionId a = 0; a < n; ++a) {
    child_value[a] = traverse(*state.child(a), updating);
    value += probs[a] * child_value[a];
  }
  for (ActionId a = 0; a < n; ++a) {
    entry.regret[a] += child_value[a] - value;
  }
  entry.visits += 1;
  return value;
}

bool ExternalSamplingMccfr::average_probs(PlayerId player, std::string_view bucket,
                                          std::span<double> out) const {
  const auto& table = table_[player - 1];
  auto it = table.find(bucket);
  if (it == table.end()) return false;
  const Entry& entry = it->second;
  double total = 0.0;
  for (double s : entry.strat_sum) total += s;
  if (total <= 0.0) {
    double u = 1.0 / static_cast<double>(out.size());
    std::fill(out.begin(), out.end(), u);
    return true;
  }
  for (std::size_t a = 0; a < entry.strat_sum.size(); ++a) out[a] = entry.strat_sum[a] / total;
  return true;
}

std::size_t ExternalSamplingMccfr::table_size(PlayerId player) const {
  return table_[player - 1].size();
}

// ---------------------------------------------------------------------------
// Solver

namespace {

class AverageStrategyView final : public StrategyView {
 public:
  AverageStrategyView(const CfrEngine& engine, const KeyFn& key1, const KeyFn& key2)
      : engine_(engine), key_{key1, key2} {}

  void action_probs(const GameState& state, std::span<double> out) const override {
    const PlayerId p = state.player_to_act();
    const std::string bucket = key_[p - 1](infoset_key(state, p));
    if (!engine_.average_probs(p, bucket, out)) {
      double u = 1.0 / static_cast<double>(out.size());
      std::fill(out.begin(), out.end(), u);
    }
  }

 private:
  const CfrEngine& engine_;
  KeyFn key_[kNumPlayers];
};

}  // namespace

Solver::Solver(const Game& game, SolverConfig config)
    : game_(game), config_(std::move(config)) {
  config_.validate();
  key_fn_[0] = raw_key_fn();
  key_fn_[1] = raw_key_fn();
  if (config_.target_abstraction.has_value()) {
    const FeatureSpace* space = game_.feature_space();
    if (space == nullptr) {
      throw ConfigError("target_abstraction requires a game with features");
    }
    key_fn_[space->target_player() - 1] =
        make_abstract_key_fn(*space, *config_.target_abstraction);
  }
  switch (config_.algorithm) {
    case Algorithm::kVanillaCfr:
      engine_ = std::make_unique<VanillaCfr>(game_, key_fn_[0], key_fn_[1]);
      break;
    case Algorithm::kExternalSamplingMccfr:
      engine_ = std::make_unique<ExternalSamplingMccfr>(game_, key_fn_[0], key_fn_[1],
                                                        config_.seed);
      break;
  }
  average_view_ = std::make_unique<AverageStrategyView>(*engine_, key_fn_[0], key_fn_[1]);
}

Solver::~Solver() = default;

void Solver::run(ConvergenceLog* log, const CheckpointFn& on_checkpoint) {
  long long done = engine_->iteration();
  auto checkpoint = [&](long long iter) {
    if (log != nullptr) {
      const double ev1 = expected_value(game_, *average_view_, 1);
      const ExploitabilityReport report = exploitability(game_, *average_view_);
      log->rows.push_back({iter, 1, ev1, report.eps1});
      log->rows.push_back({iter, 2, -ev1, report.eps2});
    }
    if (on_checkpoint) on_checkpoint(iter, *average_view_);
  };
  for (long long c : config_.eval_schedule) {
    if (c <= done) continue;
    engine_->advance(c - done);
    done = c;
    checkpoint(done);
  }
  if (done < config_.iterations) {
    engine_->advance(config_.iterations - done);
  }
}

const StrategyView& Solver::average_view() const { return *average_view_; }

StrategyProfile Solver::extract_profile() const {
  StrategyProfile profile;
  double probs[kMaxActionsBound];
  for (PlayerId p = 1; p <= 2; ++p) {
    for (const auto& [infoset, n] : enumerate_infosets(game_, p)) {
      std::span<double> out{probs, static_cast<size_t>(n)};
      if (!engine_->average_probs(p, key_fn_[p - 1](infoset), out)) {
        double u = 1.0 / static_cast<double>(n);
        std::fill(out.begin(), out.end(), u);
      }
      profile.set(p, infoset.key, std::vector<double>(out.begin(), out.end()));
    }
  }
  return profile;
}

long long Solver::iteration() const { return engine_->iteration(); }

}  // namespace gfi
