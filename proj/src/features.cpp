#include "gfi/features.hpp"

namespace gfi {

int FeatureSpace::feature_index(const std::string& name) const {
  const std::vector<std::string>& names = feature_names();
  for (int j = 0; j < static_cast<int>(names.size()); ++j) {
    if (names[j] == name) return j;
  }
  throw UsageError("unknown feature '" + name + "'");
}

}  // namespace gfi
