#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfi/cfr.hpp"
#include "gfi/goofspiel.hpp"

namespace gfi {

UtilityMode parse_utility_mode(const std::string& name);
std::string utility_mode_name(UtilityMode mode);

// Addresses one target-player infoset by exact key or by feature values.
struct SsfiSelector {
  std::optional<std::string> key;
  std::optional<std::vector<int>> hand;
  std::optional<int> center;            // C
  std::optional<std::vector<int>> deck; // D
  std::optional<std::vector<int>> opp;  // O
  std::optional<int> point_diff;        // P

  bool empty() const {
    return !key && !hand && !center && !deck && !opp && !point_diff;
  }
};

// One declarative config file drives every command; flags override single
// fields. Unknown keys anywhere are errors so typos cannot silently fall
// back to defaults.
struct ExperimentConfig {
  // game
  std::string game_name = "goofspiel";
  int k = 4;
  PlayerId target_player = 1;
  UtilityMode utility_mode = UtilityMode::kDifferential;

  // resolved output directory: config value, else GFI_OUTPUT_DIR, else "."
  std::filesystem::path output_dir;

  // solver
  Algorithm algorithm = Algorithm::kExternalSamplingMccfr;
  long long iterations = 1000000;
  std::uint64_t seed = 1;
  std::optional<std::string> abstraction;  // "none", "all", or feature names
  // nullopt = auto (20 log-spaced checkpoints); empty = no checkpoints
  std::optional<std::vector<long long>> eval_schedule;
  bool final_exploitability = true;

  // sgfi
  int replicates = 1;
  int workers = 0;

  // ssfi
  SsfiSelector selector;
  std::vector<std::string> ssfi_features;  // empty = all features
  long long t1 = 1000000;
  long long t2 = 1000000;
  std::optional<std::string> ssfi_strategy_path;
  bool ssfi_exact_mode = false;

  // eval
  std::optional<std::string> eval_strategy_path;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig load(const std::filesystem::path& path);

  // Full effective config, defaults included; the manifest snapshot.
  nlohmann::ordered_json to_json() const;

  std::unique_ptr<Game> make_game() const;

  std::vector<long long> effective_schedule() const;
};

}  // namespace gfi
