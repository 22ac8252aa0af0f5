#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfi/commands.hpp"
#include "gfi/config.hpp"
#include "gfi/types.hpp"

namespace {

// Flag values shared by all subcommands; only flags the user actually passed
// override the config file.
struct Flags {
  std::string config_path;
  std::string output_dir;
  std::string game;
  int k = 0;
  int target_player = 0;
  std::string utility_mode;
  std::string algorithm;
  long long iterations = 0;
  std::uint64_t seed = 0;
  std::string abstraction;
  int replicates = 0;
  int workers = 0;
  std::string infoset_key;
  std::string features;  // comma-separated names
  long long t1 = 0;
  long long t2 = 0;
  std::string strategy;
  bool exact = false;
  bool final_exploitability = true;

  CLI::Option* opt_config = nullptr;
  CLI::Option* opt_output = nullptr;
  CLI::Option* opt_game = nullptr;
  CLI::Option* opt_k = nullptr;
  CLI::Option* opt_target = nullptr;
  CLI::Option* opt_mode = nullptr;
  CLI::Option* opt_algorithm = nullptr;
  CLI::Option* opt_iterations = nullptr;
  CLI::Option* opt_seed = nullptr;
  CLI::Option* opt_abstraction = nullptr;
  CLI::Option* opt_replicates = nullptr;
  CLI::Option* opt_workers = nullptr;
  CLI::Option* opt_key = nullptr;
  CLI::Option* opt_features = nullptr;
  CLI::Option* opt_t1 = nullptr;
  CLI::Option* opt_t2 = nullptr;
  CLI::Option* opt_strategy = nullptr;
  CLI::Option* opt_exact = nullptr;
  CLI::Option* opt_final_eval = nullptr;

  void attach(CLI::App* cmd) {
    opt_config = cmd->add_option("-c,--config", config_path, "JSON config file");
    opt_output = cmd->add_option("-o,--output-dir", output_dir,
                                 "output directory (default: $GFI_OUTPUT_DIR or .)");
    opt_game = cmd->add_option("--game", game, "goofspiel or kuhn");
    opt_k = cmd->add_option("--k", k, "goofspiel deck size");
    opt_target = cmd->add_option("--target-player", target_player, "explained player (1 or 2)");
    opt_mode = cmd->add_option("--utility-mode", utility_mode, "differential or win_loss");
    opt_algorithm = cmd->add_option("--algorithm", algorithm, "vanilla_cfr or external_mccfr");
    opt_iterations = cmd->add_option("--iterations", iterations, "solver iterations/timesteps");
    opt_seed = cmd->add_option("--seed", seed, "master seed");
    opt_abstraction =
        cmd->add_option("--abstraction", abstraction,
                        "target-player feature subset: none, all, or names like CD");
    opt_replicates = cmd->add_option("--replicates", replicates, "sgfi replicate count");
    opt_workers = cmd->add_option("--workers", workers, "sgfi worker threads (0 = auto)");
    opt_key = cmd->add_option("--infoset-key", infoset_key, "ssfi: exact infoset key");
    opt_features = cmd->add_option("--features", features,
                                   "ssfi: comma-separated feature names (default: all)");
    opt_t1 = cmd->add_option("--t1", t1, "ssfi baseline samples");
    opt_t2 = cmd->add_option("--t2", t2, "ssfi repetitions per feature");
    opt_strategy = cmd->add_option("--strategy", strategy, "strategy file to evaluate/explain");
    opt_exact = cmd->add_flag("--exact", exact, "ssfi: exact enumeration instead of sampling");
    opt_final_eval = cmd->add_flag("--final-exploitability,!--no-final-exploitability",
                                   final_exploitability,
                                   "compute exploitability of the final profile");
  }

  gfi::ExperimentConfig build(const std::string& command) const {
    gfi::ExperimentConfig config;
    if (opt_config->count()) {
      config = gfi::ExperimentConfig::load(config_path);
    }
    if (opt_output->count()) config.output_dir = output_dir;
    if (opt_game->count()) config.game_name = game;
    if (opt_k->count()) config.k = k;
    if (opt_target->count()) config.target_player = target_player;
    if (opt_mode->count()) config.utility_mode = gfi::parse_utility_mode(utility_mode);
    if (opt_algorithm->count()) config.algorithm = gfi::parse_algorithm(algorithm);
    if (opt_iterations->count()) config.iterations = iterations;
    if (opt_seed->count()) config.seed = seed;
    if (opt_abstraction->count()) config.abstraction = abstraction;
    if (opt_replicates->count()) config.replicates = replicates;
    if (opt_workers->count()) config.workers = workers;
    if (opt_key->count()) config.selector.key = infoset_key;
    if (opt_features->count()) {
      config.ssfi_features.clear();
      std::string token;
      for (char c : features) {
        if (c == ',') {
          if (!token.empty()) config.ssfi_features.push_back(token);
          token.clear();
        } else if (c != ' ') {
          token.push_back(c);
        }
      }
      if (!token.empty()) config.ssfi_features.push_back(token);
    }
    if (opt_t1->count()) config.t1 = t1;
    if (opt_t2->count()) config.t2 = t2;
    if (opt_strategy->count()) {
      if (command == "eval") {
        config.eval_strategy_path = strategy;
      } else {
        config.ssfi_strategy_path = strategy;
      }
    }
    if (opt_exact->count()) config.ssfi_exact_mode = exact;
    if (opt_final_eval->count()) config.final_exploitability = final_exploitability;
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gfi: CFR solvers and Shapley feature-importance explainers for "
               "Goofspiel and Kuhn poker"};
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Flags>> flag_sets;
  const Flags* active_flags = nullptr;
  std::string command;
  for (const char* name : {"solve", "sgfi", "ssfi", "eval", "enumerate"}) {
    CLI::App* cmd = app.add_subcommand(name);
    auto flags = std::make_unique<Flags>();
    flags->attach(cmd);
    const Flags* raw = flags.get();
    cmd->callback([&command, &active_flags, raw, name] {
      command = name;
      active_flags = raw;
    });
    flag_sets.push_back(std::move(flags));
  }
  app.get_subcommand("solve")->description("approximate an equilibrium, write strategy + convergence");
  app.get_subcommand("sgfi")->description("game-level Shapley feature importance over coalition solves");
  app.get_subcommand("ssfi")->description("per-infoset Shapley attribution of a strategy");
  app.get_subcommand("eval")->description("exact exploitability of a strategy file");
  app.get_subcommand("enumerate")->description("list infosets and their feature values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const gfi::ExperimentConfig config = active_flags->build(command);
    if (command == "solve") return gfi::cmd_solve(config);
    if (command == "sgfi") return gfi::cmd_sgfi(config);
    if (command == "ssfi") return gfi::cmd_ssfi(config);
    if (command == "eval") return gfi::cmd_eval(config);
    if (command == "enumerate") return gfi::cmd_enumerate(config);
    std::cerr << "gfi: unknown command\n";
    return 2;
  } catch (const gfi::ConfigError& e) {
    std::cerr << "gfi: config error: " << e.what() << "\n";
    return 2;
  } catch (const gfi::UsageError& e) {
    std::cerr << "gfi: " << e.what() << "\n";
    return 2;
  } catch (const gfi::ResourceError& e) {
    std::cerr << "gfi: resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gfi: internal error: " << e.what() << "\n";
    return 1;
  }
}
