#include "igs/penalty.h"

#include <algorithm>

namespace igs {
namespace {

int CoverDistance(const Hierarchy& h, std::span<const VertexId> selection, VertexId t) {
  int best = h.depth(t);
  for (VertexId v : selection) {
    if (h.IsAncestor(v, t)) best = std::min(best, h.depth(t) - h.depth(v));
  }
  return best;
}

std::int64_t CountSubsets(std::int64_t n, int k, std::int64_t cap) {
  std::int64_t total = 0;
  std::int64_t binom = 1;  // C(n, 0)
  for (int i = 0; i <= k && i <= n; ++i) {
    total += binom;
    if (total > cap) return total;
    binom = binom * (n - i) / (i + 1);
  }
  return total;
}

}  // namespace

Penalty SetPenalty(const Hierarchy& h, std::span<const VertexId> selection,
                   std::span<const VertexId> targets) {
  Penalty total = 0;
  for (VertexId t : targets) total += CoverDistance(h, selection, t);
  return total;
}

Penalty SetPenaltyMasked(const Hierarchy& h, std::span<const VertexId> selection,
                         std::span<const std::uint8_t> target_mask) {
  Penalty total = 0;
  for (VertexId t = 0; t < h.size(); ++t) {
    if (target_mask[t]) total += CoverDistance(h, selection, t);
  }
  return total;
}

PotentialPenalty BruteForcePotentialPenalty(const Hierarchy& h,
                                            std::span<const VertexId> yes_candidates,
                                            std::span<const VertexId> potential_targets,
                                            int k, std::int64_t max_subsets) {
  std::vector<VertexId> pool(yes_candidates.begin(), yes_candidates.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const int m = static_cast<int>(pool.size());
  if (CountSubsets(m, k, max_subsets) > max_subsets) {
    throw CombinatorialLimitError("brute-force enumeration over " + std::to_string(m) +
                                  " candidates with k=" + std::to_string(k) +
                                  " exceeds the subset limit");
  }

  PotentialPenalty best;
  best.value = SetPenalty(h, {}, potential_targets);
  // Enumerate index combinations of size 1..k in lexicographic order; only a
  // strictly smaller penalty replaces the incumbent, and the empty set (the
  // smallest sequence) is the starting incumbent.
  std::vector<VertexId> chosen;
  std::vector<int> idx;
  for (int size = 1; size <= std::min(k, m); ++size) {
    idx.resize(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      chosen.clear();
      for (int i : idx) chosen.push_back(pool[i]);
      const Penalty value = SetPenalty(h, chosen, potential_targets);
      if (value < best.value || (value == best.value && chosen < best.selection)) {
        best.value = value;
        best.selection = chosen;
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == m - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return best;
}

}  // namespace igs
