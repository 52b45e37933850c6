#include "igs/topk.h"

#include <algorithm>
#include <functional>

#include "igs/dp.h"

namespace igs {

TopkStructure TopkStructure::Build(const Hierarchy& h, const SessionState& state) {
  TopkStructure t;
  t.h_ = &h;
  t.state_ = &state;
  t.k_ = state.k;
  const int n = h.size();
  t.pcount_.assign(n, 0);
  t.pdepth_.assign(n, 0);
  const auto order = h.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (state.InP(v)) {
      t.pcount_[v] += 1;
      t.pdepth_[v] += h.depth(v);
    }
    if (h.parent(v) != kNoVertex) {
      t.pcount_[h.parent(v)] += t.pcount_[v];
      t.pdepth_[h.parent(v)] += t.pdepth_[v];
    }
  }
  t.root_penalty_ = t.pdepth_[h.root()];
  for (VertexId v = 0; v < n; ++v) {
    if (state.InY(v)) {
      t.entries_.push_back({v, static_cast<Penalty>(t.pcount_[v]) * h.depth(v)});
    }
  }
  std::stable_sort(t.entries_.begin(), t.entries_.end(),
                   [](const SelectedGain& a, const SelectedGain& b) { return a.ig > b.ig; });
  return t;
}

Penalty TopkStructure::TopkSum(int k) const {
  Penalty sum = 0;
  for (int i = 0; i < k && i < static_cast<int>(entries_.size()); ++i) sum += entries_[i].ig;
  return sum;
}

// Top-k over the committed entries off the root path of u, merged with the
// replacement values of the path vertices.
Penalty TopkStructure::TopkWithPath(VertexId u, std::vector<Penalty>& pool) const {
  int taken = 0;
  for (const SelectedGain& e : entries_) {
    if (taken == k_) break;
    if (h_->IsAncestor(e.vertex, u)) continue;
    pool.push_back(e.ig);
    ++taken;
  }
  const int m = std::min<int>(k_, static_cast<int>(pool.size()));
  std::partial_sort(pool.begin(), pool.begin() + m, pool.end(), std::greater<>());
  Penalty sum = 0;
  for (int i = 0; i < m; ++i) sum += pool[i];
  return sum;
}

Penalty TopkStructure::ApproxAfterYes(VertexId u) const {
  // Every vertex of anc(u) joins Y; the proper ancestors leave P.
  std::vector<Penalty> path;
  Penalty removed_depth = 0;
  int cum = 0;
  for (VertexId v = u; v != kNoVertex; v = h_->parent(v)) {
    if (v != u && state_->InP(v)) {
      ++cum;
      removed_depth += h_->depth(v);
    }
    path.push_back(static_cast<Penalty>(pcount_[v] - cum) * h_->depth(v));
  }
  const Penalty top = TopkWithPath(u, path);
  return root_penalty_ - removed_depth - top;
}

Penalty TopkStructure::ApproxAfterNo(VertexId u) const {
  const int c = pcount_[u];
  std::vector<Penalty> path;
  for (VertexId v = h_->parent(u); v != kNoVertex; v = h_->parent(v)) {
    if (state_->InY(v)) path.push_back(static_cast<Penalty>(pcount_[v] - c) * h_->depth(v));
  }
  const Penalty top = TopkWithPath(u, path);
  return root_penalty_ - pdepth_[u] - top;
}

Penalty ApproxPotentialPenalty(const Hierarchy& h, const SessionState& state) {
  return TopkStructure::Build(h, state).ApproxPenalty();
}

std::vector<GainRow> TopkStructure::GainAll() const {
  const Hierarchy& h = *h_;
  const SessionState& state = *state_;
  const Penalty g = ApproxPenalty();
  const std::vector<double> p_no = MultiNoProbabilities(h, state);

  struct Anc {
    int tout;
    int depth;
    int pcount;
    bool in_p;
    bool in_y;
  };
  std::vector<Anc> stack;
  std::vector<Penalty> pool;
  std::vector<GainRow> rows;
  rows.reserve(state.CandidateCount());
  const auto order = h.preorder();
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    const VertexId u = order[i];
    while (!stack.empty() && stack.back().tout <= i) stack.pop_back();
    const int du = h.depth(u);
    const int cu = pcount_[u];
    if (state.IsCandidate(u)) {
      // Yes: anc(u) joins Y, the proper ancestors leave P.
      pool.clear();
      pool.push_back(static_cast<Penalty>(cu) * du);
      Penalty removed_depth = 0;
      int cum = 0;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        if (it->in_p) {
          ++cum;
          removed_depth += it->depth;
        }
        pool.push_back(static_cast<Penalty>(it->pcount - cum) * it->depth);
      }
      const Penalty after_yes = root_penalty_ - removed_depth - TopkWithPath(u, pool);

      pool.clear();
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        if (it->in_y) pool.push_back(static_cast<Penalty>(it->pcount - cu) * it->depth);
      }
      const Penalty after_no = root_penalty_ - pdepth_[u] - TopkWithPath(u, pool);

      GainRow row;
      row.vertex = u;
      row.p_no = p_no[u];
      row.p_yes = 1.0 - p_no[u];
      row.g_yes = g - after_yes;
      row.g_no = g - after_no;
      row.gain = ExpectedGain(row.g_yes, row.g_no, row.p_yes, row.p_no);
      rows.push_back(row);
    }
    if (h.SubtreeSize(u) > 1 && cu > 0) {
      stack.push_back({h.euler_out(u), du, cu, state.InP(u), state.InY(u)});
    } else if (h.SubtreeSize(u) > 1) {
      // Nothing below is in P, so nothing below is a candidate.
      i = h.euler_out(u) - 1;
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const GainRow& a, const GainRow& b) { return a.vertex < b.vertex; });
  return rows;
}

std::vector<GainRow> KbmTopkGainAll(const Hierarchy& h, const SessionState& state) {
  return TopkStructure::Build(h, state).GainAll();
}

VertexId KbmTopkNextQuestion(const Hierarchy& h, const SessionState& state) {
  const std::vector<GainRow> rows = KbmTopkGainAll(h, state);
  return ArgmaxGain(h, rows).vertex;
}

ApproxBounds ApproximationBounds(const Hierarchy& h, const SessionState& state) {
  if (state.p_count == 0) return {};
  const Penalty g =
      BruteForcePotentialPenalty(h, state.YesCandidates(), state.PotentialTargets(), state.k)
          .value;
  const TopkStructure t = TopkStructure::Build(h, state);
  ApproxBounds b;
  b.ub = g;
  b.lb = g - static_cast<Penalty>(state.k - 1) * (t.RootPenalty() - g);
  b.gprime = t.ApproxPenalty();
  return b;
}

}  // namespace igs
