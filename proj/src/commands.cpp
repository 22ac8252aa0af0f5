#include "gfi/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gfi/cfr.hpp"
#include "gfi/evaluation.hpp"
#include "gfi/features.hpp"
#include "gfi/io_util.hpp"
#include "gfi/manifest.hpp"
#include "gfi/sgfi.hpp"
#include "gfi/ssfi.hpp"
#include "gfi/strategy.hpp"
#include "gfi/types.hpp"

namespace gfi {

namespace {

constexpr const char* kEvalSchema = "gfi.eval/1";

void write_artifact(RunManifest& manifest, const std::filesystem::path& dir,
                    const std::string& name, std::string_view content) {
  manifest.add_output(name, content);
  write_file_atomic(dir / name, content);
}

std::optional<FeatureSubset> parse_abstraction_option(const ExperimentConfig& config,
                                                      const Game& game) {
  if (!config.abstraction.has_value()) return std::nullopt;
  const FeatureSpace* space = game.feature_space();
  if (space == nullptr) {
    throw ConfigError("solver.abstraction requires a game with features");
  }
  return FeatureSubset::parse(*config.abstraction, *space);
}

SolverConfig make_solver_config(const ExperimentConfig& config, const Game& game) {
  SolverConfig sc;
  sc.algorithm = config.algorithm;
  sc.iterations = config.iterations;
  sc.seed = config.seed;
  sc.target_abstraction = parse_abstraction_option(config, game);
  sc.eval_schedule = config.effective_schedule();
  sc.validate();
  return sc;
}

std::string card_run(std::vector<int> cards, int k, const char* what) {
  if (cards.empty()) throw ConfigError(std::string(what) + " must be non-empty");
  std::sort(cards.begin(), cards.end());
  std::string out;
  int prev = 0;
  for (int c : cards) {
    if (c < 1 || c > k) {
      throw ConfigError(std::string(what) + " contains a card outside 1.." +
                        std::to_string(k));
    }
    if (c == prev) throw ConfigError(std::string(what) + " contains a duplicate card");
    prev = c;
    out.push_back(static_cast<char>('0' + c));
  }
  return out;
}

std::string describe_entry(const InfosetIndex& index, int id) {
  const InfosetIndex::Entry& entry = index.entry(id);
  const auto& names = index.space().feature_names();
  std::string out = "key=" + entry.infoset.key;
  for (std::size_t j = 0; j < names.size(); ++j) {
    out += ' ';
    out += names[j];
    out += '=';
    out += entry.values[j].empty() ? "-" : entry.values[j];
  }
  return out;
}

// Resolves the configured selector to exactly one target-player infoset, or
// throws UsageError listing candidates.
InfosetKey resolve_selector(const ExperimentConfig& config, const Game& game,
                            const InfosetIndex& index) {
  const SsfiSelector& sel = config.selector;
  if (sel.empty()) {
    throw ConfigError("ssfi.selector must set key or hand");
  }
  if (sel.key.has_value()) {
    const int id = index.find_key(*sel.key);
    if (id < 0) {
      throw UsageError("selector key '" + *sel.key + "' matches no infoset");
    }
    return index.entry(id).infoset;
  }
  if (!sel.hand.has_value()) {
    throw ConfigError("ssfi.selector needs a hand (or an exact key)");
  }
  const FeatureSpace& space = index.space();
  const std::string signature = card_run(*sel.hand, config.k, "selector.hand");
  std::vector<std::pair<int, std::string>> constraints;
  if (sel.center) constraints.emplace_back(space.feature_index("C"), std::to_string(*sel.center));
  if (sel.deck) constraints.emplace_back(space.feature_index("D"), card_run(*sel.deck, config.k, "selector.D"));
  if (sel.opp) constraints.emplace_back(space.feature_index("O"), card_run(*sel.opp, config.k, "selector.O"));
  if (sel.point_diff) constraints.emplace_back(space.feature_index("P"), std::to_string(*sel.point_diff));
  const std::vector<int> matches = index.query(signature, constraints);
  if (matches.size() == 1) return index.entry(matches[0]).infoset;

  constexpr std::size_t kListLimit = 10;
  std::string message;
  if (matches.empty()) {
    message = "selector matches no infoset; candidates with the same hand:";
    const std::vector<int>& pool = index.pool(signature);
    if (pool.empty()) message = "selector matches no infoset and no infoset has that hand";
    for (std::size_t i = 0; i < pool.size() && i < kListLimit; ++i) {
      message += "\n  " + describe_entry(index, pool[i]);
    }
    if (pool.size() > kListLimit) {
      message += "\n  ... (" + std::to_string(pool.size() - kListLimit) + " more)";
    }
  } else {
    message = "selector matches " + std::to_string(matches.size()) +
              " infosets; add constraints (or use \"key\") to pick one:";
    for (std::size_t i = 0; i < matches.size() && i < kListLimit; ++i) {
      message += "\n  " + describe_entry(index, matches[i]);
    }
    if (matches.size() > kListLimit) {
      message += "\n  ... (" + std::to_string(matches.size() - kListLimit) + " more)";
    }
  }
  (void)game;
  throw UsageError(message);
}

std::vector<int> resolve_feature_set(const ExperimentConfig& config,
                                     const FeatureSpace& space) {
  std::vector<int> feature_set;
  if (config.ssfi_features.empty()) {
    feature_set.resize(space.num_features());
    for (int j = 0; j < space.num_features(); ++j) feature_set[j] = j;
  } else {
    for (const std::string& name : config.ssfi_features) {
      feature_set.push_back(space.feature_index(name));
    }
  }
  return feature_set;
}

StrategyProfile load_profile(const std::string& path) {
  return StrategyProfile::load(path);
}

}  // namespace

std::filesystem::path prepare_output_dir(const ExperimentConfig& config) {
  std::filesystem::path dir = config.output_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("GFI_OUTPUT_DIR"); env != nullptr && *env != '\0') {
      dir = env;
    }
  }
  if (dir.empty()) dir = ".";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create output directory " + dir.string());
  return dir;
}

int cmd_solve(const ExperimentConfig& config) {
  const std::filesystem::path dir = prepare_output_dir(config);
  const std::unique_ptr<Game> game = config.make_game();
  RunManifest manifest("solve", config.to_json(), config.seed);
  StageTimer total;

  Solver solver(*game, make_solver_config(config, *game));
  ConvergenceLog log;
  StageTimer solving;
  solver.run(&log);
  manifest.add_timing("solve", solving.seconds());

  const StrategyProfile profile = solver.extract_profile();
  write_artifact(manifest, dir, "strategy.json", profile.to_json_string());
  write_artifact(manifest, dir, "convergence.csv", log.to_csv());

  if (config.final_exploitability) {
    StageTimer evaluating;
    const ExploitabilityReport report = exploitability(*game, profile);
    const double ev1 = expected_value(*game, profile, 1);
    manifest.add_timing("final_eval", evaluating.seconds());
    manifest.add_result("final_expected_value_p1", ev1);
    manifest.add_result("final_eps1", report.eps1);
    manifest.add_result("final_eps2", report.eps2);
    manifest.add_result("final_avg_exploitability", report.avg);
    std::cout << "solved " << game->name() << ": ev1=" << format_double(ev1)
              << " avg_exploitability=" << format_double(report.avg) << "\n";
  } else {
    std::cout << "solved " << game->name() << "\n";
  }
  manifest.add_timing("total", total.seconds());
  manifest.write(dir);
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_sgfi(const ExperimentConfig& config) {
  const std::filesystem::path dir = prepare_output_dir(config);
  const std::unique_ptr<Game> game = config.make_game();
  RunManifest manifest("sgfi", config.to_json(), config.seed);
  StageTimer total;

  SgfiOptions options;
  options.algorithm = config.algorithm;
  options.iterations = config.iterations;
  options.master_seed = config.seed;
  options.replicates = config.replicates;
  options.eval_schedule = config.effective_schedule();
  options.workers = config.workers;
  options.final_exploitability = config.final_exploitability;

  StageTimer solving;
  const SgfiResult result = run_sgfi(*game, options);
  manifest.add_timing("coalition_solves", solving.seconds());

  for (const CoalitionCell& cell : result.cells) {
    const std::string name = "coalition_" + subset_name(result.features, cell.mask) +
                             "_r" + std::to_string(cell.replicate) + ".csv";
    write_artifact(manifest, dir, name, coalition_csv(cell));
  }
  write_artifact(manifest, dir, "sgfi_report.json",
                 sgfi_report_json(*game, options, result));
  for (int j = 0; j < result.m; ++j) {
    manifest.add_result("phi_" + result.features[j], result.phi_mean[j]);
    std::cout << "phi_" << result.features[j] << " = "
              << format_double(result.phi_mean[j])
              << " (stddev " << format_double(result.phi_stddev[j]) << ")\n";
  }
  manifest.add_timing("total", total.seconds());
  manifest.write(dir);
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_ssfi(const ExperimentConfig& config) {
  const std::filesystem::path dir = prepare_output_dir(config);
  const std::unique_ptr<Game> game = config.make_game();
  const FeatureSpace* space = game->feature_space();
  if (space == nullptr) throw ConfigError("ssfi requires a game with features");
  RunManifest manifest("ssfi", config.to_json(), config.seed);
  StageTimer total;

  StrategyProfile profile;
  if (config.ssfi_strategy_path.has_value()) {
    profile = load_profile(*config.ssfi_strategy_path);
  } else {
    StageTimer solving;
    SolverConfig sc = make_solver_config(config, *game);
    sc.eval_schedule.clear();
    Solver solver(*game, sc);
    solver.run();
    profile = solver.extract_profile();
    manifest.add_timing("inline_solve", solving.seconds());
    write_artifact(manifest, dir, "strategy.json", profile.to_json_string());
  }

  StageTimer indexing;
  const InfosetIndex index(*game, space->target_player());
  manifest.add_timing("index", indexing.seconds());

  const InfosetKey infoset = resolve_selector(config, *game, index);
  const std::vector<int> feature_set = resolve_feature_set(config, *space);

  StageTimer explaining;
  SsfiReport report;
  if (config.ssfi_exact_mode) {
    report = ssfi_exact(index, profile, infoset, feature_set);
  } else {
    SsfiOptions options;
    options.feature_set = feature_set;
    options.t1 = config.t1;
    options.t2 = config.t2;
    options.seed = config.seed;
    report = ssfi(index, profile, infoset, options);
  }
  manifest.add_timing("ssfi", explaining.seconds());

  const std::string table = render_ssfi_table(report);
  write_artifact(manifest, dir, "ssfi_report.json", ssfi_report_json(report));
  write_artifact(manifest, dir, "ssfi_table.txt", table);
  std::cout << table;
  manifest.add_result("missing_rate", report.missing_rate);
  manifest.add_timing("total", total.seconds());
  manifest.write(dir);
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_eval(const ExperimentConfig& config) {
  const std::filesystem::path dir = prepare_output_dir(config);
  const std::unique_ptr<Game> game = config.make_game();
  if (!config.eval_strategy_path.has_value()) {
    throw ConfigError("eval.strategy (or --strategy) must point to a strategy file");
  }
  RunManifest manifest("eval", config.to_json(), config.seed);
  StageTimer total;

  const StrategyProfile profile = load_profile(*config.eval_strategy_path);
  const ExploitabilityReport report = exploitability(*game, profile);

  nlohmann::ordered_json doc;
  doc["schema"] = kEvalSchema;
  doc["eps1"] = report.eps1;
  doc["eps2"] = report.eps2;
  doc["avg"] = report.avg;
  doc["v_star"] = report.v_star;
  write_artifact(manifest, dir, "eval.json", doc.dump(2) + "\n");
  std::cout << "eps1=" << format_double(report.eps1)
            << " eps2=" << format_double(report.eps2)
            << " avg=" << format_double(report.avg)
            << " v_star=" << format_double(report.v_star) << "\n";
  manifest.add_timing("total", total.seconds());
  manifest.write(dir);
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_enumerate(const ExperimentConfig& config) {
  const std::filesystem::path dir = prepare_output_dir(config);
  const std::unique_ptr<Game> game = config.make_game();
  RunManifest manifest("enumerate", config.to_json(), config.seed);
  StageTimer total;

  const FeatureSpace* space = game->feature_space();
  std::string listing;
  for (PlayerId p = 1; p <= 2; ++p) {
    const auto infosets = enumerate_infosets(*game, p);
    listing += "# player " + std::to_string(p) + ": " +
               std::to_string(infosets.size()) + " infosets\n";
    const bool annotated = space != nullptr && space->target_player() == p;
    for (const auto& [infoset, num_actions] : infosets) {
      listing += infoset.key;
      listing += "\tactions=" + std::to_string(num_actions);
      if (annotated) {
        const auto& names = space->feature_names();
        const std::vector<std::string> values = space->feature_values(infoset);
        for (std::size_t j = 0; j < names.size(); ++j) {
          listing += '\t';
          listing += names[j];
          listing += '=';
          listing += values[j].empty() ? "-" : values[j];
        }
      }
      listing += '\n';
    }
    std::cout << "player " << p << ": " << infosets.size() << " infosets\n";
  }
  write_artifact(manifest, dir, "enumerate.txt", listing);
  manifest.add_timing("total", total.seconds());
  manifest.write(dir);
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

}  // namespace gfi
