#pragma once

#include <cstdint>
#include <vector>

#include "igs/gain.h"
#include "igs/hierarchy.h"
#include "igs/session.h"

namespace igs {

// Single-target gains of every candidate in one bottom-up pass over the
// anchor's subtree restricted to P. Rows come out in pre-order. `visits`, if
// given, is incremented once per vertex touched.
std::vector<GainRow> DfsGainAll(const Hierarchy& h, const SessionState& state,
                                std::int64_t* visits = nullptr);

// Reference computation for one candidate from the set-penalty definition.
// O(n) per call.
GainRow NaiveGainSingle(const Hierarchy& h, const SessionState& state, VertexId v);

VertexId StbisNextQuestion(const Hierarchy& h, const SessionState& state,
                           std::int64_t* visits = nullptr);

}  // namespace igs
