#include "gfi/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

namespace gfi {

namespace {
constexpr const char* kStrategySchema = "gfi.strategy/1";
}

void UniformStrategy::action_probs(const GameState&, std::span<double> out) const {
  double p = 1.0 / static_cast<double>(out.size());
  std::fill(out.begin(), out.end(), p);
}

void StrategyProfile::set(PlayerId player, std::string key, std::vector<double> probs) {
  tables_[player - 1][std::move(key)] = std::move(probs);
}

const std::vector<double>* StrategyProfile::find(PlayerId player,
                                                 std::string_view key) const {
  const Table& t = tables_[player - 1];
  auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

void StrategyProfile::probs_for(PlayerId player, std::string_view key,
                                std::span<double> out) const {
  if (const std::vector<double>* p = find(player, key)) {
    std::copy(p->begin(), p->end(), out.begin());
    return;
  }
  double u = 1.0 / static_cast<double>(out.size());
  std::fill(out.begin(), out.end(), u);
}

void StrategyProfile::action_probs(const GameState& state, std::span<double> out) const {
  probs_for(state.player_to_act(), state.infoset_string(), out);
}

std::string StrategyProfile::to_json_string() const {
  nlohmann::json root;
  root["schema"] = kStrategySchema;
  nlohmann::json profiles = nlohmann::json::array();
  for (PlayerId p = 1; p <= 2; ++p) {
    // Sorted entries keep serialization byte-deterministic.
    std::map<std::string_view, const std::vector<double>*> sorted;
    for (const auto& [key, probs] : tables_[p - 1]) sorted.emplace(key, &probs);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, probs] : sorted) {
      entries.push_back({{"infoset", key}, {"probs", *probs}});
    }
    profiles.push_back({{"player", p}, {"entries", std::move(entries)}});
  }
  root["profiles"] = std::move(profiles);
  return root.dump(2);
}

StrategyProfile StrategyProfile::from_json_string(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("strategy file is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || root.value("schema", "") != kStrategySchema) {
    throw ConfigError("strategy file missing schema '" + std::string(kStrategySchema) + "'");
  }
  StrategyProfile profile;
  for (const auto& entry : root.at("profiles")) {
    PlayerId player = entry.at("player").get<int>();
    if (!is_contestant(player)) throw ConfigError("strategy file: player must be 1 or 2");
    for (const auto& row : entry.at("entries")) {
      std::vector<double> probs = row.at("probs").get<std::vector<double>>();
      if (probs.empty()) throw ConfigError("strategy file: empty probability vector");
      double sum = 0.0;
      for (double v : probs) {
        if (!(v >= 0.0)) throw ConfigError("strategy file: negative probability");
        sum += v;
      }
      if (std::fabs(sum - 1.0) > 1e-9) {
        throw ConfigError("strategy file: probabilities at '" +
                          row.at("infoset").get<std::string>() +
                          "' sum to " + std::to_string(sum));
      }
      profile.set(player, row.at("infoset").get<std::string>(), std::move(probs));
    }
  }
  return profile;
}

void StrategyProfile::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << to_json_string() << '\n';
}

StrategyProfile StrategyProfile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open strategy file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_string(text);
}

}  // namespace gfi
