#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "igs/hierarchy.h"

namespace igs {

using Penalty = std::int64_t;

// f<v,t>: dist(v,t) when v reaches t, otherwise the full penalty depth(t).
inline int PairwisePenalty(const Hierarchy& h, VertexId v, VertexId t) {
  return h.IsAncestor(v, t) ? h.depth(t) - h.depth(v) : h.depth(t);
}

// f(S,T) = sum over t of min over v in S ∪ {root} of dist(v,t).
Penalty SetPenalty(const Hierarchy& h, std::span<const VertexId> selection,
                   std::span<const VertexId> targets);

// Same as SetPenalty, with the potential-target set given as a membership mask.
Penalty SetPenaltyMasked(const Hierarchy& h, std::span<const VertexId> selection,
                         std::span<const std::uint8_t> target_mask);

class CombinatorialLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialPenalty {
  Penalty value = 0;
  std::vector<VertexId> selection;  // sorted ascending
};

// g(Y,P,k) by enumerating every S ⊆ Y with |S| <= k (including the empty set,
// which is covered by the root). Ties go to the lexicographically smallest
// sorted id sequence. Test-scale only: throws CombinatorialLimitError when the
// number of subsets exceeds `max_subsets`.
PotentialPenalty BruteForcePotentialPenalty(const Hierarchy& h,
                                            std::span<const VertexId> yes_candidates,
                                            std::span<const VertexId> potential_targets,
                                            int k, std::int64_t max_subsets = 5'000'000);

}  // namespace igs
