#pragma once

#include <string>
#include <vector>

#include "gfi/game.hpp"
#include "gfi/types.hpp"

namespace gfi {

// Per-infoset feature annotation for the player being explained. Feature
// values are canonical strings so the abstraction and explainer layers stay
// generic over games and feature families; equality of encodings is equality
// of values.
class FeatureSpace {
 public:
  virtual ~FeatureSpace() = default;

  virtual PlayerId target_player() const = 0;

  virtual const std::vector<std::string>& feature_names() const = 0;

  int num_features() const { return static_cast<int>(feature_names().size()); }

  // Canonical label of the infoset's action set (always visible to the
  // player; abstractions never merge across different action sets).
  virtual std::string action_signature(const InfosetKey& infoset) const = 0;

  // Canonical value encodings, index-aligned with feature_names(). Total on
  // target-player infosets; throws UsageError for the other player.
  virtual std::vector<std::string> feature_values(const InfosetKey& infoset) const = 0;

  // Human-readable labels of the infoset's actions in action-id order.
  virtual std::vector<std::string> action_labels(const InfosetKey& infoset) const = 0;

  int feature_index(const std::string& name) const;
};

}  // namespace gfi
