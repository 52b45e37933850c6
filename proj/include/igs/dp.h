#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "igs/gain.h"
#include "igs/hierarchy.h"
#include "igs/penalty.h"
#include "igs/session.h"

namespace igs {

// Exact g(Y, P, k) by tree DP.
//
// dp(u, w, j): least penalty of P ∩ des(u) using at most j selected vertices
// inside des(u), given that the nearest selected proper ancestor of u is the
// ancestor at depth w (the root always counts as selected). Slots of u are the
// depths [0, max(depth(u), 1)).
//
//   dp_no(u, w, j)  = [u ∈ P](depth(u) - w) + knap over live children c of dp(c, w, ·)
//   dp_yes(u, j)    = [u ∈ Y, j >= 1] knap over live children c of dp(c, depth(u), ·)(j - 1)
//   dp(u, w, j)     = min(dp_no, dp_yes)
//
// A child is live when its subtree holds a potential target. For each live
// child x the knapsack of its live siblings (excl) is kept so that a change
// below x can be propagated to the root in O(h k^2) per ancestor.
class DpTable {
 public:
  using Cell = Penalty;
  static constexpr Cell kInf = std::numeric_limits<Cell>::max() / 4;

  static DpTable Build(const Hierarchy& h, std::span<const std::uint8_t> in_p,
                       std::span<const std::uint8_t> in_y, int k);
  static DpTable Build(const Hierarchy& h, const SessionState& state) {
    return Build(h, state.in_p, state.in_y, state.k);
  }

  int k() const { return k_; }
  Penalty Value() const;
  Penalty Dp(VertexId u, int w_depth, int j) const;
  Penalty DpYes(VertexId u, int j) const;
  Penalty DpNo(VertexId u, int w_depth, int j) const;

  // g after a hypothetical Yes / No at candidate u (u ∈ P \ Y), recomputing
  // only u and its ancestors.
  Penalty CalgYes(VertexId u) const;
  Penalty CalgNo(VertexId u) const;

  // Sorted optimal selection; {root} when nothing beats the root alone.
  std::vector<VertexId> ExtractSelection() const;

  // Number of (vertex, slot) recomputations performed by CalgYes/CalgNo.
  std::int64_t recomputations() const { return recomputations_; }

 private:
  DpTable() = default;

  int Slots(VertexId u) const;
  const Cell* DpRow(VertexId u, int w) const { return &dp_[offset_[u] + w * (k_ + 1)]; }
  const Cell* ExclRow(VertexId u, int w) const {
    return &excl_[offset_[u] + w * (k_ + 1)];
  }
  bool Live(VertexId u) const { return pcount_[u] > 0; }
  void KnapNo(VertexId u, int w, Cell* out) const;
  Penalty Propagate(VertexId u, std::vector<Cell> cur, bool yes) const;
  const Cell* KnapSelf(VertexId u) const { return &knap_self_[static_cast<std::int64_t>(u) * (k_ + 1)]; }

  const Hierarchy* h_ = nullptr;
  int k_ = 1;
  std::vector<std::uint8_t> in_p_;
  std::vector<std::uint8_t> in_y_;
  std::vector<int> pcount_;
  std::vector<std::int64_t> offset_;
  std::vector<Cell> dp_;
  std::vector<Cell> excl_;
  std::vector<Cell> knap_self_;  // knap over live children at slot depth(u)
  mutable std::int64_t recomputations_ = 0;
};

// pNo(v) = product over des(v) ∩ P of (1 - pr); pYes = 1 - pNo.
std::vector<double> MultiNoProbabilities(const Hierarchy& h, const SessionState& state);

// Exact multi-target gains for every candidate, in id order.
std::vector<GainRow> KbmDpGainAll(const Hierarchy& h, const SessionState& state,
                                  const DpTable& table);

struct DpQuestionStats {
  std::int64_t candidates = 0;
  std::int64_t recomputations = 0;
};

VertexId KbmDpNextQuestion(const Hierarchy& h, const SessionState& state,
                           DpQuestionStats* stats = nullptr);

}  // namespace igs
