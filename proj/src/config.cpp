#include "gfi/config.hpp"

#include <cstdlib>

#include "gfi/io_util.hpp"
#include "gfi/kuhn.hpp"
#include "gfi/types.hpp"

namespace gfi {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

template <class T>
void read_field(const json& obj, const char* name, T& out) {
  auto it = obj.find(name);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + name + "'");
  }
}

template <class T>
void read_optional(const json& obj, const char* name, std::optional<T>& out) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + name + "'");
  }
}

}  // namespace

UtilityMode parse_utility_mode(const std::string& name) {
  if (name == "differential") return UtilityMode::kDifferential;
  if (name == "win_loss" || name == "win-loss") return UtilityMode::kWinLoss;
  throw ConfigError("unknown utility_mode '" + name +
                    "' (expected differential or win_loss)");
}

std::string utility_mode_name(UtilityMode mode) {
  return mode == UtilityMode::kDifferential ? "differential" : "win_loss";
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  check_keys(doc, "config", {"game", "output_dir", "solver", "sgfi", "ssfi", "eval"});

  ExperimentConfig config;

  if (doc.contains("game")) {
    const json& game = doc["game"];
    check_keys(game, "game", {"name", "k", "target_player", "utility_mode"});
    read_field(game, "name", config.game_name);
    read_field(game, "k", config.k);
    read_field(game, "target_player", config.target_player);
    if (game.contains("utility_mode")) {
      config.utility_mode = parse_utility_mode(game["utility_mode"].get<std::string>());
    }
  }

  {
    std::string dir;
    read_field(doc, "output_dir", dir);
    if (!dir.empty()) config.output_dir = dir;
  }

  if (doc.contains("solver")) {
    const json& solver = doc["solver"];
    check_keys(solver, "solver",
               {"algorithm", "iterations", "seed", "abstraction", "eval_schedule",
                "final_exploitability"});
    if (solver.contains("algorithm")) {
      config.algorithm = parse_algorithm(solver["algorithm"].get<std::string>());
    }
    read_field(solver, "iterations", config.iterations);
    read_field(solver, "seed", config.seed);
    read_optional(solver, "abstraction", config.abstraction);
    read_optional(solver, "eval_schedule", config.eval_schedule);
    read_field(solver, "final_exploitability", config.final_exploitability);
  }

  if (doc.contains("sgfi")) {
    const json& sgfi = doc["sgfi"];
    check_keys(sgfi, "sgfi", {"replicates", "workers"});
    read_field(sgfi, "replicates", config.replicates);
    read_field(sgfi, "workers", config.workers);
  }

  if (doc.contains("ssfi")) {
    const json& ssfi = doc["ssfi"];
    check_keys(ssfi, "ssfi",
               {"selector", "features", "t1", "t2", "strategy", "exact"});
    if (ssfi.contains("selector")) {
      const json& sel = ssfi["selector"];
      check_keys(sel, "ssfi.selector", {"key", "hand", "C", "D", "O", "P"});
      read_optional(sel, "key", config.selector.key);
      read_optional(sel, "hand", config.selector.hand);
      read_optional(sel, "C", config.selector.center);
      read_optional(sel, "D", config.selector.deck);
      read_optional(sel, "O", config.selector.opp);
      read_optional(sel, "P", config.selector.point_diff);
    }
    read_field(ssfi, "features", config.ssfi_features);
    read_field(ssfi, "t1", config.t1);
    read_field(ssfi, "t2", config.t2);
    read_optional(ssfi, "strategy", config.ssfi_strategy_path);
    read_field(ssfi, "exact", config.ssfi_exact_mode);
  }

  if (doc.contains("eval")) {
    const json& eval = doc["eval"];
    check_keys(eval, "eval", {"strategy"});
    read_optional(eval, "strategy", config.eval_strategy_path);
  }

  return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const ResourceError& e) {
    throw ConfigError(e.what());
  }
  return from_json_text(text);
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json game;
  game["name"] = game_name;
  if (game_name == "goofspiel") {
    game["k"] = k;
    game["target_player"] = target_player;
    game["utility_mode"] = utility_mode_name(utility_mode);
  }
  doc["game"] = std::move(game);
  doc["output_dir"] = output_dir.string();
  nlohmann::ordered_json solver;
  solver["algorithm"] = algorithm_name(algorithm);
  solver["iterations"] = iterations;
  solver["seed"] = seed;
  solver["abstraction"] = abstraction ? nlohmann::ordered_json(*abstraction)
                                      : nlohmann::ordered_json(nullptr);
  solver["eval_schedule"] = effective_schedule();
  solver["final_exploitability"] = final_exploitability;
  doc["solver"] = std::move(solver);
  nlohmann::ordered_json sgfi;
  sgfi["replicates"] = replicates;
  sgfi["workers"] = workers;
  doc["sgfi"] = std::move(sgfi);
  nlohmann::ordered_json ssfi;
  nlohmann::ordered_json sel;
  if (selector.key) sel["key"] = *selector.key;
  if (selector.hand) sel["hand"] = *selector.hand;
  if (selector.center) sel["C"] = *selector.center;
  if (selector.deck) sel["D"] = *selector.deck;
  if (selector.opp) sel["O"] = *selector.opp;
  if (selector.point_diff) sel["P"] = *selector.point_diff;
  ssfi["selector"] = std::move(sel);
  ssfi["features"] = ssfi_features;
  ssfi["t1"] = t1;
  ssfi["t2"] = t2;
  ssfi["strategy"] = ssfi_strategy_path ? nlohmann::ordered_json(*ssfi_strategy_path)
                                        : nlohmann::ordered_json(nullptr);
  ssfi["exact"] = ssfi_exact_mode;
  doc["ssfi"] = std::move(ssfi);
  nlohmann::ordered_json eval;
  eval["strategy"] = eval_strategy_path ? nlohmann::ordered_json(*eval_strategy_path)
                                        : nlohmann::ordered_json(nullptr);
  doc["eval"] = std::move(eval);
  return doc;
}

std::unique_ptr<Game> ExperimentConfig::make_game() const {
  if (game_name == "goofspiel") {
    GoofspielConfig gc;
    gc.k = k;
    gc.target_player = target_player;
    gc.utility_mode = utility_mode;
    gc.validate();
    return std::make_unique<GoofspielGame>(gc);
  }
  if (game_name == "kuhn") {
    return std::make_unique<KuhnGame>();
  }
  throw ConfigError("unknown game '" + game_name + "' (expected goofspiel or kuhn)");
}

std::vector<long long> ExperimentConfig::effective_schedule() const {
  if (eval_schedule.has_value()) return *eval_schedule;
  return log_spaced_schedule(iterations, 20);
}

}  // namespace gfi
