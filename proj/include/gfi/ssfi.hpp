#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfi/features.hpp"
#include "gfi/game.hpp"
#include "gfi/strategy.hpp"

namespace gfi {

// Feature-addressable catalogue of one player's infosets: every infoset from
// enumerate_infosets, grouped by action signature, with cached feature
// values. Queries are exact-match on the constrained features.
class InfosetIndex {
 public:
  InfosetIndex(const Game& game, PlayerId player);

  struct Entry {
    InfosetKey infoset;
    int num_actions = 0;
    std::vector<std::string> values;  // all features, feature-space order
  };

  std::size_t size() const { return entries_.size(); }
  const Entry& entry(int id) const { return entries_[id]; }

  // Entry ids sharing an action signature, in sorted-key order; empty when
  // the signature is unknown.
  const std::vector<int>& pool(std::string_view signature) const;

  // Entry id of an exact infoset key, or -1.
  int find_key(std::string_view key) const;

  // Entry ids matching the signature and every (feature index, value)
  // constraint; any subset of features may be constrained.
  std::vector<int> query(
      std::string_view signature,
      std::span<const std::pair<int, std::string>> constraints) const;

  const FeatureSpace& space() const { return *space_; }
  PlayerId player() const { return player_; }

 private:
  const FeatureSpace* space_;
  PlayerId player_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<int>, StringHash, StringEq> by_signature_;
  std::unordered_map<std::string, int, StringHash, StringEq> by_key_;
};

struct SsfiOptions {
  std::vector<int> feature_set;  // feature indices to attribute over
  long long t1 = 1000000;        // baseline draws
  long long t2 = 1000000;        // repetitions per feature
  std::uint64_t seed = 1;
};

struct SsfiReport {
  InfosetKey infoset;
  std::vector<std::string> actions;        // action labels
  std::vector<std::string> feature_names;  // feature_set, by name
  std::vector<double> phi0;
  std::vector<std::vector<double>> phi;  // [feature_set position][action]
  std::vector<double> reconstructed;     // phi0 + sum_j phi[j]
  std::vector<double> strategy;          // sigma at the explained infoset
  double missing_rate = 0.0;             // fraction of substituted sigma terms
  long long t1 = 0;
  long long t2 = 0;
  std::uint64_t seed = 0;
  bool exact = false;
  std::vector<std::string> warnings;
};

// Sampled estimator: phi0 from t1 uniform pool draws; per feature, t2
// repetitions of (draw alternative infoset, draw feature order, look up the
// two mixed-feature infosets, take the strategy difference). Empty lookup
// pools substitute phi0 and count toward missing_rate. Deterministic given
// the seed; repetitions use independently derived streams.
SsfiReport ssfi(const InfosetIndex& index, const StrategyProfile& profile,
                const InfosetKey& infoset, const SsfiOptions& options);

// Exact expectation of the sampled estimator: averages over all feature
// orders, all alternative infosets, and uniformly over each lookup pool.
// ResourceError when orders x pool exceeds the enumeration budget.
SsfiReport ssfi_exact(const InfosetIndex& index, const StrategyProfile& profile,
                      const InfosetKey& infoset, const std::vector<int>& feature_set);

std::string ssfi_report_json(const SsfiReport& report);

// Human-readable table: one row per action; percentages with one decimal.
std::string render_ssfi_table(const SsfiReport& report);

}  // namespace gfi
