#include "gfi/abstraction.hpp"

#include <bit>

#include "gfi/types.hpp"

namespace gfi {

FeatureSubset::FeatureSubset(std::uint32_t mask, int num_features)
    : mask_(mask), num_features_(num_features) {
  if (num_features < 0 || num_features > 31) {
    throw UsageError("feature count out of range");
  }
  if (mask >> num_features) {
    throw UsageError("feature subset mask exceeds feature count");
  }
}

FeatureSubset FeatureSubset::parse(const std::string& text, const FeatureSpace& space) {
  const int m = space.num_features();
  if (text == "none") return FeatureSubset(0, m);
  if (text == "all") return full(space);
  std::uint32_t mask = 0;
  for (char c : text) {
    const int j = space.feature_index(std::string(1, c));
    if ((mask >> j) & 1u) {
      throw UsageError("duplicate feature '" + std::string(1, c) + "' in subset");
    }
    mask |= 1u << j;
  }
  return FeatureSubset(mask, m);
}

FeatureSubset FeatureSubset::full(const FeatureSpace& space) {
  const int m = space.num_features();
  return FeatureSubset((1u << m) - 1u, m);
}

FeatureSubset FeatureSubset::empty(const FeatureSpace& space) {
  return FeatureSubset(0, space.num_features());
}

bool FeatureSubset::is_full() const {
  return mask_ == (1u << num_features_) - 1u;
}

int FeatureSubset::size() const { return std::popcount(mask_); }

std::vector<int> FeatureSubset::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (int j = 0; j < num_features_; ++j) {
    if (contains(j)) out.push_back(j);
  }
  return out;
}

std::string FeatureSubset::name(const FeatureSpace& space) const {
  if (is_empty()) return "none";
  std::string out;
  for (int j : members()) out += space.feature_names()[j];
  return out;
}

bool abstraction_refines(const FeatureSubset& a, const FeatureSubset& b) {
  if (a.num_features() != b.num_features()) {
    throw UsageError("cannot compare subsets over different feature spaces");
  }
  return (b.mask() & ~a.mask()) == 0;
}

std::string abstract_key(const FeatureSpace& space, const InfosetKey& infoset,
                         const FeatureSubset& subset) {
  std::string key = space.action_signature(infoset);
  key += '#';
  const std::vector<std::string> values = space.feature_values(infoset);
  bool first = true;
  for (int j : subset.members()) {
    if (!first) key += '|';
    key += values[j];
    first = false;
  }
  return key;
}

KeyFn raw_key_fn() {
  return [](const InfosetKey& infoset) { return infoset.key; };
}

KeyFn make_abstract_key_fn(const FeatureSpace& space, const FeatureSubset& subset) {
  const PlayerId target = space.target_player();
  return [&space, subset, target](const InfosetKey& infoset) {
    if (infoset.player != target) return infoset.key;
    return abstract_key(space, infoset, subset);
  };
}

}  // namespace gfi
