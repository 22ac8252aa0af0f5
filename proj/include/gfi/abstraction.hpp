#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gfi/features.hpp"
#include "gfi/game.hpp"

namespace gfi {

// A subset of the feature index set {0, ..., m-1}, stored as a bitmask.
class FeatureSubset {
 public:
  FeatureSubset() = default;
  FeatureSubset(std::uint32_t mask, int num_features);

  // Parses "none" (empty subset), "all", or a string of feature names such
  // as "CD". Names must be single characters drawn from `space`.
  static FeatureSubset parse(const std::string& text, const FeatureSpace& space);
  static FeatureSubset full(const FeatureSpace& space);
  static FeatureSubset empty(const FeatureSpace& space);

  bool contains(int feature) const { return (mask_ >> feature) & 1u; }
  bool is_full() const;
  bool is_empty() const { return mask_ == 0; }
  int num_features() const { return num_features_; }
  std::uint32_t mask() const { return mask_; }
  int size() const;

  // Member feature indices in increasing order.
  std::vector<int> members() const;

  // Canonical name: "none" for the empty subset, otherwise the concatenated
  // feature names in feature-space order.
  std::string name(const FeatureSpace& space) const;

  bool operator==(const FeatureSubset& other) const = default;

 private:
  std::uint32_t mask_ = 0;
  int num_features_ = 0;
};

// abstraction a refines abstraction b iff b's feature subset is contained in
// a's: keeping more features splits classes further.
bool abstraction_refines(const FeatureSubset& a, const FeatureSubset& b);

// Maps an infoset of the feature space's target player to its abstract class
// key: the action signature, then the values of the retained features.
std::string abstract_key(const FeatureSpace& space, const InfosetKey& infoset,
                         const FeatureSubset& subset);

// Key function used by solvers to bucket infosets. The raw key function is
// the identity on infoset strings; an abstract key function merges the target
// player's infosets by class and leaves the opponent untouched.
using KeyFn = std::function<std::string(const InfosetKey&)>;

KeyFn raw_key_fn();
KeyFn make_abstract_key_fn(const FeatureSpace& space, const FeatureSubset& subset);

}  // namespace gfi
