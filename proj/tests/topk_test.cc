#include "igs/topk.h"

#include <gtest/gtest.h>

#include <random>

#include "igs/dp.h"
#include "test_util.h"

namespace igs {
namespace {

using testing::RandomRecursiveTree;
using testing::RandomWalk;
using testing::TenVertexExample;

TEST(TopkTest, ExampleAfterYesAtV3) {
  const Hierarchy h = TenVertexExample();
  SessionState s = InitSession(h, SearchMode::kMulti, 2, 2);
  ApplyAnswer(s, h, 3, Answer::kYes);
  const TopkStructure t = TopkStructure::Build(h, s);
  EXPECT_EQ(t.RootPenalty(), 19);
  ASSERT_EQ(t.entries().size(), 3u);
  EXPECT_EQ(t.entries()[0].vertex, 3);
  EXPECT_EQ(t.entries()[0].ig, 8);
  EXPECT_EQ(t.entries()[1].vertex, 1);
  EXPECT_EQ(t.entries()[1].ig, 7);
  EXPECT_EQ(t.ApproxPenalty(), 4);
  const ApproxBounds b = ApproximationBounds(h, s);
  EXPECT_EQ(b.lb, -3);
  EXPECT_EQ(b.gprime, 4);
  EXPECT_EQ(b.ub, 8);
}

TEST(TopkTest, RootOnlyIsRootPenalty) {
  const Hierarchy h = TenVertexExample();
  const SessionState s = InitSession(h, SearchMode::kMulti, 2, 3);
  EXPECT_EQ(ApproxPotentialPenalty(h, s), 20);
}

TEST(TopkTest, EmptyPotentialTargetsGiveZeroBounds) {
  const Hierarchy h = TenVertexExample();
  SessionState s = InitSession(h, SearchMode::kMulti, 5, 2);
  ApplyAnswer(s, h, 1, Answer::kNo);
  ApplyAnswer(s, h, 2, Answer::kNo);
  ASSERT_EQ(s.p_count, 1);  // only the root
  s.p_count = 0;
  s.in_p.assign(h.size(), 0);
  const ApproxBounds b = ApproximationBounds(h, s);
  EXPECT_EQ(b.lb, 0);
  EXPECT_EQ(b.ub, 0);
  EXPECT_EQ(b.gprime, 0);
}

TEST(TopkTest, FirstQuestionMatchesDpAtKOne) {
  const Hierarchy h = TenVertexExample();
  const SessionState s = InitSession(h, SearchMode::kMulti, 2, 1);
  EXPECT_EQ(KbmTopkNextQuestion(h, s), KbmDpNextQuestion(h, s));
  // pr = 0.1: Gain(v1) = 8(1 - 0.9^8) + 19 * 0.9^8 beats Gain(v3).
  EXPECT_EQ(KbmTopkNextQuestion(h, s), 1);
}

// Hypothetical answers priced on the committed structure equal a rebuild on
// the answered state; bounds hold; k = 1 is exact.
TEST(TopkTest, HypotheticalsAndBoundsOnRandomStates) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 25)(rng);
    const Hierarchy h = RandomRecursiveTree(n, rng);
    const int k = std::min(n, std::uniform_int_distribution<int>(1, 3)(rng));
    SessionState s = InitSession(h, SearchMode::kMulti, 100, k);
    RandomWalk(s, h, std::uniform_int_distribution<int>(0, 6)(rng), rng);
    if (s.p_count == 0) continue;
    const ApproxBounds b = ApproximationBounds(h, s);
    EXPECT_TRUE(b.Holds()) << b.lb << " " << b.gprime << " " << b.ub;
    if (k == 1) EXPECT_EQ(b.gprime, b.ub);
    const TopkStructure t = TopkStructure::Build(h, s);
    const auto before = t.entries();
    for (VertexId u : s.Candidates()) {
      SessionState yes = s;
      yes.budget_remaining = 1;
      yes.terminated = false;
      SessionState no = yes;
      ApplyAnswer(yes, h, u, Answer::kYes);
      ApplyAnswer(no, h, u, Answer::kNo);
      EXPECT_EQ(t.ApproxAfterYes(u), ApproxPotentialPenalty(h, yes));
      EXPECT_EQ(t.ApproxAfterNo(u), ApproxPotentialPenalty(h, no));
      ++checked;
    }
    const Penalty g = t.ApproxPenalty();
    const auto rows = t.GainAll();
    ASSERT_EQ(rows.size(), s.Candidates().size());
    for (const GainRow& r : rows) {
      EXPECT_EQ(r.g_yes, g - t.ApproxAfterYes(r.vertex));
      EXPECT_EQ(r.g_no, g - t.ApproxAfterNo(r.vertex));
    }
    ASSERT_EQ(t.entries().size(), before.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      EXPECT_EQ(t.entries()[i].vertex, before[i].vertex);
      EXPECT_EQ(t.entries()[i].ig, before[i].ig);
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(TopkTest, CommittedGainsMatchDefinition) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Hierarchy h = RandomRecursiveTree(30, rng);
    SessionState s = InitSession(h, SearchMode::kMulti, 100, 2);
    RandomWalk(s, h, 5, rng);
    const TopkStructure t = TopkStructure::Build(h, s);
    for (const SelectedGain& e : t.entries()) {
      Penalty count = 0;
      for (VertexId v : h.SubtreeVertices(e.vertex)) count += s.InP(v);
      EXPECT_EQ(e.ig, count * h.depth(e.vertex));
    }
  }
}

}  // namespace
}  // namespace igs
