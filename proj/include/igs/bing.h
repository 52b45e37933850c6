#pragma once

#include "igs/hierarchy.h"
#include "igs/session.h"

namespace igs {

// Candidate maximizing the number of potential targets pruned under the worse
// of the two answers:
//   single: min(|P ∩ des(v)|, |P| - |P ∩ des(v)|)
//   multi:  min(|P ∩ anc(v)| - 1, |P ∩ des(v)|)
// Ties: deeper vertex, then smaller id.
VertexId BingNextQuestionSingle(const Hierarchy& h, const SessionState& state);
VertexId BingNextQuestionMulti(const Hierarchy& h, const SessionState& state);

// The guaranteed prune count of v used by the two selectors.
int BingGuaranteedPrune(const Hierarchy& h, const SessionState& state, VertexId v);

}  // namespace igs
