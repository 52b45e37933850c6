#include "igs/bing.h"

#include <algorithm>
#include <vector>

#include "igs/gain.h"

namespace igs {
namespace {

std::vector<int> SubtreePCounts(const Hierarchy& h, const SessionState& state) {
  std::vector<int> below(h.size(), 0);
  const auto order = h.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    below[v] += state.in_p[v];
    if (h.parent(v) != kNoVertex) below[h.parent(v)] += below[v];
  }
  return below;
}

std::vector<int> PathPCounts(const Hierarchy& h, const SessionState& state) {
  std::vector<int> above(h.size(), 0);
  for (VertexId v : h.preorder()) {
    above[v] = state.in_p[v] + (h.parent(v) == kNoVertex ? 0 : above[h.parent(v)]);
  }
  return above;
}

int Prune(SearchMode mode, const SessionState& state, const std::vector<int>& below,
          const std::vector<int>& above, VertexId v) {
  if (mode == SearchMode::kSingle) return std::min(below[v], state.p_count - below[v]);
  return std::min(above[v] - 1, below[v]);
}

VertexId BestPrune(SearchMode mode, const Hierarchy& h, const SessionState& state) {
  const std::vector<int> below = SubtreePCounts(h, state);
  const std::vector<int> above =
      mode == SearchMode::kMulti ? PathPCounts(h, state) : std::vector<int>();
  VertexId best = kNoVertex;
  int best_prune = -1;
  for (VertexId v : state.Candidates()) {
    const int prune = Prune(mode, state, below, above, v);
    if (best == kNoVertex || GainPreferred(h, prune, v, best_prune, best)) {
      best = v;
      best_prune = prune;
    }
  }
  if (best == kNoVertex) throw EmptyCandidatePoolError();
  return best;
}

}  // namespace

int BingGuaranteedPrune(const Hierarchy& h, const SessionState& state, VertexId v) {
  const std::vector<int> above =
      state.mode == SearchMode::kMulti ? PathPCounts(h, state) : std::vector<int>();
  return Prune(state.mode, state, SubtreePCounts(h, state), above, v);
}

VertexId BingNextQuestionSingle(const Hierarchy& h, const SessionState& state) {
  return BestPrune(SearchMode::kSingle, h, state);
}

VertexId BingNextQuestionMulti(const Hierarchy& h, const SessionState& state) {
  return BestPrune(SearchMode::kMulti, h, state);
}

}  // namespace igs
