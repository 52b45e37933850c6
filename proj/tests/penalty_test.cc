#include "igs/penalty.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace igs {
namespace {

using testing::TenVertexExample;

TEST(PenaltyTest, Pairwise) {
  const Hierarchy h = TenVertexExample();
  EXPECT_EQ(PairwisePenalty(h, 2, 8), 3);
  EXPECT_EQ(PairwisePenalty(h, 3, 8), 1);
  EXPECT_EQ(PairwisePenalty(h, 8, 8), 0);
}

TEST(PenaltyTest, SetPenalty) {
  const Hierarchy h = TenVertexExample();
  const std::vector<VertexId> s{2, 3};
  EXPECT_EQ(SetPenalty(h, s, std::vector<VertexId>{2, 5, 8}), 3);
  EXPECT_EQ(SetPenalty(h, s, std::vector<VertexId>{5}), 2);
  const std::vector<VertexId> t{4, 6, 9};
  EXPECT_EQ(SetPenalty(h, t, t), 0);
  EXPECT_EQ(SetPenalty(h, {}, t), 2 + 3 + 3);
}

TEST(PenaltyTest, BruteForceExamples) {
  const Hierarchy h = TenVertexExample();
  std::vector<VertexId> all(10);
  for (int i = 0; i < 10; ++i) all[i] = i;
  EXPECT_EQ(BruteForcePotentialPenalty(h, std::vector<VertexId>{0}, all, 2).value, 20);

  std::vector<VertexId> p(all.begin() + 2, all.end());
  const auto g = BruteForcePotentialPenalty(h, std::vector<VertexId>{0, 1, 3}, p, 2);
  EXPECT_EQ(g.value, 8);
  EXPECT_EQ(g.selection, (std::vector<VertexId>{1, 3}));
  EXPECT_EQ(BruteForcePotentialPenalty(h, std::vector<VertexId>{0, 1, 3}, {}, 2).value, 0);
}

TEST(PenaltyTest, BruteForceGuard) {
  const Hierarchy h = TenVertexExample();
  std::vector<VertexId> all(10);
  for (int i = 0; i < 10; ++i) all[i] = i;
  EXPECT_THROW(BruteForcePotentialPenalty(h, all, all, 5, 100), CombinatorialLimitError);
}

TEST(PenaltyTest, MaskedMatchesList) {
  const Hierarchy h = TenVertexExample();
  std::vector<std::uint8_t> mask(10, 0);
  mask[5] = mask[8] = mask[2] = 1;
  const std::vector<VertexId> s{3};
  EXPECT_EQ(SetPenaltyMasked(h, s, mask), SetPenalty(h, s, std::vector<VertexId>{2, 5, 8}));
}

}  // namespace
}  // namespace igs
