#include "gfi/abstraction.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "gfi/game.hpp"
#include "gfi/goofspiel.hpp"
#include "gfi/types.hpp"

namespace gfi {
namespace {

TEST(FeatureSubsetTest, ParseNamesNoneAll) {
  GoofspielFeatureSpace space(3, 1);
  FeatureSubset none = FeatureSubset::parse("none", space);
  EXPECT_TRUE(none.is_empty());
  EXPECT_EQ(none.name(space), "none");

  FeatureSubset all = FeatureSubset::parse("all", space);
  EXPECT_TRUE(all.is_full());
  EXPECT_EQ(all.name(space), "CDOP");

  FeatureSubset cd = FeatureSubset::parse("CD", space);
  EXPECT_EQ(cd.size(), 2);
  EXPECT_TRUE(cd.contains(0));
  EXPECT_TRUE(cd.contains(1));
  EXPECT_FALSE(cd.contains(2));
  EXPECT_EQ(cd.members(), (std::vector<int>{0, 1}));
  // Order-insensitive parse, canonical name in feature-space order.
  EXPECT_EQ(FeatureSubset::parse("DC", space), cd);
  EXPECT_EQ(cd.name(space), "CD");

  EXPECT_THROW(FeatureSubset::parse("CX", space), UsageError);
  EXPECT_THROW(FeatureSubset::parse("CC", space), UsageError);
}

TEST(FeatureSubsetTest, RefinesIsSupersetOrder) {
  GoofspielFeatureSpace space(3, 1);
  FeatureSubset none = FeatureSubset::empty(space);
  FeatureSubset c = FeatureSubset::parse("C", space);
  FeatureSubset cd = FeatureSubset::parse("CD", space);
  FeatureSubset op = FeatureSubset::parse("OP", space);
  FeatureSubset all = FeatureSubset::full(space);

  // Keeping more features refines: alpha(S') refines alpha(S) iff S subset S'.
  EXPECT_TRUE(abstraction_refines(all, cd));
  EXPECT_TRUE(abstraction_refines(cd, c));
  EXPECT_TRUE(abstraction_refines(c, none));
  EXPECT_TRUE(abstraction_refines(cd, cd));
  EXPECT_FALSE(abstraction_refines(c, cd));
  EXPECT_FALSE(abstraction_refines(cd, op));
  EXPECT_FALSE(abstraction_refines(op, cd));
}

TEST(AbstractKeyTest, KeyIsSignaturePlusRetainedValues) {
  GoofspielFeatureSpace space(4, 1);
  InfosetKey infoset{1, "2343"};
  FeatureSubset cd = FeatureSubset::parse("CD", space);
  EXPECT_EQ(abstract_key(space, infoset, cd), "124#3|14");
  FeatureSubset none = FeatureSubset::empty(space);
  EXPECT_EQ(abstract_key(space, infoset, none), "124#");
  FeatureSubset all = FeatureSubset::full(space);
  EXPECT_EQ(abstract_key(space, infoset, all), "124#3|14|123|-2");
}

TEST(AbstractKeyTest, KeyFnLeavesOpponentRaw) {
  GoofspielFeatureSpace space(3, 1);
  KeyFn fn = make_abstract_key_fn(space, FeatureSubset::empty(space));
  InfosetKey own{1, "1212"};
  InfosetKey opp{2, "1212"};
  EXPECT_NE(fn(own), "1212");
  EXPECT_EQ(fn(opp), "1212");
  EXPECT_EQ(raw_key_fn()(own), "1212");
}

// Class-count lattice: keeping more features can only split classes.
std::size_t class_count(const Game& game, const FeatureSubset& subset) {
  const FeatureSpace& space = *game.feature_space();
  std::set<std::string> classes;
  for (const auto& [infoset, n] : enumerate_infosets(game, space.target_player())) {
    (void)n;
    classes.insert(abstract_key(space, infoset, subset));
  }
  return classes.size();
}

TEST(AbstractKeyTest, ClassCountsAreMonotoneInTheSubsetLattice) {
  GoofspielGame game({3, 1, UtilityMode::kDifferential});
  const GoofspielFeatureSpace& space =
      *static_cast<const GoofspielFeatureSpace*>(game.feature_space());
  std::vector<std::size_t> counts(16);
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    counts[mask] = class_count(game, FeatureSubset(mask, 4));
  }
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    for (int j = 0; j < 4; ++j) {
      if (mask & (1u << j)) continue;
      EXPECT_LE(counts[mask], counts[mask | (1u << j)])
          << "adding feature " << space.feature_names()[static_cast<size_t>(j)];
    }
  }
  // The empty subset pools by action signature only; far fewer classes.
  EXPECT_LT(counts[0], counts[15]);
  // Even the full feature set merges raw infosets that differ only in the
  // order rounds resolved (273 raw target infosets at k = 3).
  EXPECT_LT(counts[15], 273u);
}

TEST(AbstractKeyTest, SubsetValidation) {
  GoofspielFeatureSpace space(3, 1);
  EXPECT_THROW(FeatureSubset(16u, 4), UsageError);  // bit outside range
  EXPECT_NO_THROW(FeatureSubset(15u, 4));
  InfosetKey opp{2, "1212"};
  FeatureSubset cd = FeatureSubset::parse("CD", space);
  EXPECT_THROW(abstract_key(space, opp, cd), UsageError);
}

}  // namespace
}  // namespace gfi
