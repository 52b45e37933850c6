#pragma once

#include <cstdint>
#include <vector>

#include "igs/gain.h"
#include "igs/hierarchy.h"
#include "igs/penalty.h"
#include "igs/session.h"

namespace igs {

// IG(x) = |P ∩ des(x)| · depth(x): the penalty removed by selecting x alone.
struct SelectedGain {
  VertexId vertex = kNoVertex;
  Penalty ig = 0;
};

// Committed selected gains of Y for one round, ordered max-first, plus the
// subtree aggregates needed to price a hypothetical answer without touching
// the committed entries.
class TopkStructure {
 public:
  static TopkStructure Build(const Hierarchy& h, const SessionState& state);

  const std::vector<SelectedGain>& entries() const { return entries_; }
  Penalty TopkSum(int k) const;
  Penalty RootPenalty() const { return root_penalty_; }  // f({r}, P)

  // g'(Y, P, k) = f({r}, P) - TopkSum(k).
  Penalty ApproxPenalty() const { return root_penalty_ - TopkSum(k_); }

  // g' after a hypothetical Yes / No at candidate u.
  Penalty ApproxAfterYes(VertexId u) const;
  Penalty ApproxAfterNo(VertexId u) const;

  // Rows for every candidate, in id order. One pre-order sweep that keeps the
  // root path on a stack; same values as ApproxAfterYes / ApproxAfterNo.
  std::vector<GainRow> GainAll() const;

 private:
  // `pool` holds the path replacement values on entry; used as scratch.
  Penalty TopkWithPath(VertexId u, std::vector<Penalty>& pool) const;

  const Hierarchy* h_ = nullptr;
  const SessionState* state_ = nullptr;
  int k_ = 1;
  std::vector<SelectedGain> entries_;
  std::vector<int> pcount_;
  std::vector<Penalty> pdepth_;
  Penalty root_penalty_ = 0;
};

Penalty ApproxPotentialPenalty(const Hierarchy& h, const SessionState& state);

std::vector<GainRow> KbmTopkGainAll(const Hierarchy& h, const SessionState& state);

VertexId KbmTopkNextQuestion(const Hierarchy& h, const SessionState& state);

struct ApproxBounds {
  Penalty lb = 0;
  Penalty ub = 0;
  Penalty gprime = 0;
  bool Holds() const { return lb <= gprime && gprime <= ub; }
};

// (g - (k-1)(f({r},P) - g), g) around g' with g by exhaustive enumeration.
// Test scale only.
ApproxBounds ApproximationBounds(const Hierarchy& h, const SessionState& state);

}  // namespace igs
