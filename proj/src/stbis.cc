#include "igs/stbis.h"

#include <algorithm>

#include "igs/penalty.h"

namespace igs {

std::vector<GainRow> DfsGainAll(const Hierarchy& h, const SessionState& state,
                                std::int64_t* visits) {
  const VertexId s = state.anchor;
  std::vector<GainRow> rows;
  if (!state.InP(s)) return rows;

  // Iterative DFS over P-vertices below s; `order` is pre-order, so walking
  // it backwards aggregates children before parents.
  std::vector<VertexId> order;
  std::vector<VertexId> stack{s};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto kids = h.children(v);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (state.InP(*it)) stack.push_back(*it);
    }
  }
  if (visits) *visits += static_cast<std::int64_t>(order.size());

  const int n = h.size();
  std::vector<Penalty> f(n, 0);
  std::vector<int> cnt(n, 0);
  std::vector<double> p_yes(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    cnt[v] += 1;
    p_yes[v] += state.pr[v];
    if (v != s) {
      const VertexId p = h.parent(v);
      // Every P-vertex below v is one edge further from the parent.
      f[p] += f[v] + cnt[v];
      cnt[p] += cnt[v];
      p_yes[p] += p_yes[v];
    }
  }

  const Penalty f_s = f[s];
  rows.reserve(order.size() - 1);
  for (VertexId v : order) {
    if (v == s || state.InY(v)) continue;
    GainRow row;
    row.vertex = v;
    row.p_yes = std::min(p_yes[v], 1.0);
    row.p_no = 1.0 - row.p_yes;
    row.g_yes = f_s - f[v];
    row.g_no = f[v] + static_cast<Penalty>(h.depth(v) - h.depth(s)) * cnt[v];
    row.gain = ExpectedGain(row.g_yes, row.g_no, row.p_yes, row.p_no);
    rows.push_back(row);
  }
  return rows;
}

GainRow NaiveGainSingle(const Hierarchy& h, const SessionState& state, VertexId v) {
  const VertexId s = state.anchor;
  std::vector<VertexId> p_all;
  std::vector<VertexId> p_yes_side;
  std::vector<VertexId> p_no_side;
  double p_yes = 0.0;
  for (VertexId u = 0; u < h.size(); ++u) {
    if (!state.InP(u)) continue;
    p_all.push_back(u);
    if (h.IsAncestor(v, u)) {
      p_yes_side.push_back(u);
      p_yes += state.pr[u];
    } else {
      p_no_side.push_back(u);
    }
  }
  const std::vector<VertexId> anchor{s};
  const std::vector<VertexId> asked{v};
  const Penalty base = SetPenalty(h, anchor, p_all);

  GainRow row;
  row.vertex = v;
  row.p_yes = std::min(p_yes, 1.0);
  row.p_no = 1.0 - row.p_yes;
  row.g_yes = base - SetPenalty(h, asked, p_yes_side);
  row.g_no = base - SetPenalty(h, anchor, p_no_side);
  row.gain = ExpectedGain(row.g_yes, row.g_no, row.p_yes, row.p_no);
  return row;
}

VertexId StbisNextQuestion(const Hierarchy& h, const SessionState& state,
                           std::int64_t* visits) {
  const std::vector<GainRow> rows = DfsGainAll(h, state, visits);
  return ArgmaxGain(h, rows).vertex;
}

}  // namespace igs
