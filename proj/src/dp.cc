#include "igs/dp.h"

#include <algorithm>
#include <cassert>

namespace igs {
namespace {

using Cell = DpTable::Cell;
constexpr Cell kInf = DpTable::kInf;

Cell Add(Cell a, Cell b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

// out[j] = min over t of a[j - t] + b[t]. `out` may not alias the inputs.
void Combine(const Cell* a, const Cell* b, int width, Cell* out) {
  for (int j = 0; j < width; ++j) {
    Cell best = kInf;
    for (int t = 0; t <= j; ++t) best = std::min(best, Add(a[j - t], b[t]));
    out[j] = best;
  }
}

}  // namespace

int DpTable::Slots(VertexId u) const { return std::max(h_->depth(u), 1); }

DpTable DpTable::Build(const Hierarchy& h, std::span<const std::uint8_t> in_p,
                       std::span<const std::uint8_t> in_y, int k) {
  DpTable t;
  t.h_ = &h;
  t.k_ = k;
  t.in_p_.assign(in_p.begin(), in_p.end());
  t.in_y_.assign(in_y.begin(), in_y.end());
  const int n = h.size();
  const int width = k + 1;
  const auto order = h.preorder();

  t.pcount_.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    t.pcount_[v] += t.in_p_[v];
    if (h.parent(v) != kNoVertex) t.pcount_[h.parent(v)] += t.pcount_[v];
  }

  t.offset_.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) {
    t.offset_[v + 1] = t.offset_[v] + static_cast<std::int64_t>(t.Slots(v)) * width;
  }
  t.dp_.assign(t.offset_[n], 0);
  t.excl_.assign(t.offset_[n], 0);
  t.knap_self_.assign(static_cast<std::size_t>(n) * width, 0);

  std::vector<VertexId> live;
  std::vector<Cell> prefix;
  std::vector<Cell> suffix;
  std::vector<Cell> knap(width);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (!t.Live(v)) continue;  // all-zero rows
    live.clear();
    for (VertexId c : h.children(v)) {
      if (t.Live(c)) live.push_back(c);
    }
    const int m = static_cast<int>(live.size());
    prefix.assign(static_cast<std::size_t>(m + 1) * width, 0);
    suffix.assign(static_cast<std::size_t>(m + 1) * width, 0);
    Cell* self = &t.knap_self_[static_cast<std::size_t>(v) * width];
    const int dv = h.depth(v);

    // Child slot dv means "v selected"; evaluate it first so dp_yes is known.
    for (int pass = 0; pass <= dv; ++pass) {
      const int wd = pass == 0 ? dv : pass - 1;
      for (int i = 0; i < m; ++i) {
        Combine(&prefix[i * width], t.DpRow(live[i], wd), width, &prefix[(i + 1) * width]);
      }
      for (int i = m - 1; i >= 0; --i) {
        Combine(t.DpRow(live[i], wd), &suffix[(i + 1) * width], width, &suffix[i * width]);
      }
      for (int i = 0; i < m; ++i) {
        Cell* excl = &t.excl_[t.offset_[live[i]] + wd * width];
        Combine(&prefix[i * width], &suffix[(i + 1) * width], width, excl);
      }
      std::copy_n(&prefix[m * width], width, knap.begin());
      if (wd == dv) std::copy_n(knap.begin(), width, self);
      if (wd >= t.Slots(v)) continue;
      const Cell pen = t.in_p_[v] ? dv - wd : 0;
      Cell* row = &t.dp_[t.offset_[v] + wd * width];
      for (int j = 0; j < width; ++j) {
        const Cell yes = (t.in_y_[v] && j >= 1) ? self[j - 1] : kInf;
        row[j] = std::min(pen + knap[j], yes);
      }
    }
  }
  return t;
}

Penalty DpTable::Value() const { return DpRow(h_->root(), 0)[k_]; }

Penalty DpTable::Dp(VertexId u, int w_depth, int j) const { return DpRow(u, w_depth)[j]; }

Penalty DpTable::DpYes(VertexId u, int j) const {
  return (in_y_[u] && j >= 1) ? KnapSelf(u)[j - 1] : kInf;
}

void DpTable::KnapNo(VertexId u, int w, Cell* out) const {
  // Any live child's sibling-excluded knapsack plus its own row gives the
  // knapsack over all live children.
  for (VertexId c : h_->children(u)) {
    if (Live(c)) {
      Combine(ExclRow(c, w), DpRow(c, w), k_ + 1, out);
      return;
    }
  }
  std::fill_n(out, k_ + 1, 0);
}

Penalty DpTable::DpNo(VertexId u, int w_depth, int j) const {
  if (!Live(u)) return 0;
  std::vector<Cell> knap(k_ + 1);
  KnapNo(u, w_depth, knap.data());
  return (in_p_[u] ? h_->depth(u) - w_depth : 0) + knap[j];
}

Penalty DpTable::Propagate(VertexId u, std::vector<Cell> cur, bool yes) const {
  const int width = k_ + 1;
  std::vector<Cell> knap;
  std::vector<Cell> next;
  VertexId x = u;
  for (VertexId v = h_->parent(u); v != kNoVertex; x = v, v = h_->parent(v)) {
    assert(Live(x));
    const int dv = h_->depth(v);
    const int slots = Slots(v);
    knap.assign(static_cast<std::size_t>(dv + 1) * width, 0);
    for (int wd = 0; wd <= dv; ++wd) {
      Combine(ExclRow(x, wd), &cur[wd * width], width, &knap[wd * width]);
    }
    const bool selectable = yes || in_y_[v];
    const Cell* self = &knap[dv * width];
    next.assign(static_cast<std::size_t>(slots) * width, 0);
    for (int wd = 0; wd < slots; ++wd) {
      // A Yes removes every proper ancestor of u from P.
      const Cell pen = (!yes && in_p_[v]) ? dv - wd : 0;
      for (int j = 0; j < width; ++j) {
        const Cell sel = (selectable && j >= 1) ? self[j - 1] : kInf;
        next[wd * width + j] = std::min(pen + knap[wd * width + j], sel);
      }
    }
    recomputations_ += slots;
    cur.swap(next);
  }
  return cur[k_];
}

Penalty DpTable::CalgYes(VertexId u) const {
  assert(u != h_->root());
  const int width = k_ + 1;
  const int slots = Slots(u);
  std::vector<Cell> cur(static_cast<std::size_t>(slots) * width);
  std::vector<Cell> knap(width);
  const Cell* self = KnapSelf(u);
  for (int wd = 0; wd < slots; ++wd) {
    KnapNo(u, wd, knap.data());
    const Cell pen = in_p_[u] ? h_->depth(u) - wd : 0;
    for (int j = 0; j < width; ++j) {
      const Cell sel = j >= 1 ? self[j - 1] : kInf;
      cur[wd * width + j] = std::min(pen + knap[j], sel);
    }
  }
  recomputations_ += slots;
  return Propagate(u, std::move(cur), true);
}

Penalty DpTable::CalgNo(VertexId u) const {
  assert(u != h_->root());
  const int slots = Slots(u);
  recomputations_ += slots;
  return Propagate(u, std::vector<Cell>(static_cast<std::size_t>(slots) * (k_ + 1), 0),
                   false);
}

std::vector<VertexId> DpTable::ExtractSelection() const {
  const int width = k_ + 1;
  struct Frame {
    VertexId v;
    int wd;
    int j;
  };
  std::vector<VertexId> selection;
  std::vector<Frame> stack{{h_->root(), 0, k_}};
  std::vector<VertexId> live;
  std::vector<Cell> prefix;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.j == 0 || !Live(f.v)) continue;
    live.clear();
    for (VertexId c : h_->children(f.v)) {
      if (Live(c)) live.push_back(c);
    }
    const int m = static_cast<int>(live.size());
    std::vector<Cell> knap(width);
    KnapNo(f.v, f.wd, knap.data());
    const Cell no = (in_p_[f.v] ? h_->depth(f.v) - f.wd : 0) + knap[f.j];
    const Cell yes = DpYes(f.v, f.j);
    int slot = f.wd;
    int budget = f.j;
    if (yes < no) {
      selection.push_back(f.v);
      slot = h_->depth(f.v);
      budget = f.j - 1;
    }
    prefix.assign(static_cast<std::size_t>(m + 1) * width, 0);
    for (int i = 0; i < m; ++i) {
      Combine(&prefix[i * width], DpRow(live[i], slot), width, &prefix[(i + 1) * width]);
    }
    int rem = budget;
    for (int i = m - 1; i >= 0 && rem > 0; --i) {
      const Cell target = prefix[(i + 1) * width + rem];
      const Cell* row = DpRow(live[i], slot);
      int t = 0;
      while (Add(prefix[i * width + rem - t], row[t]) != target) ++t;
      if (t > 0) stack.push_back({live[i], slot, t});
      rem -= t;
    }
  }
  std::erase(selection, h_->root());
  if (selection.empty()) return {h_->root()};
  std::sort(selection.begin(), selection.end());
  return selection;
}

std::vector<double> MultiNoProbabilities(const Hierarchy& h, const SessionState& state) {
  std::vector<double> p_no(h.size(), 1.0);
  const auto order = h.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (state.in_p[v]) p_no[v] *= 1.0 - state.pr[v];
    if (h.parent(v) != kNoVertex) p_no[h.parent(v)] *= p_no[v];
  }
  return p_no;
}

std::vector<GainRow> KbmDpGainAll(const Hierarchy& h, const SessionState& state,
                                  const DpTable& table) {
  const Penalty g = table.Value();
  const std::vector<double> p_no = MultiNoProbabilities(h, state);
  std::vector<GainRow> rows;
  for (VertexId u : state.Candidates()) {
    GainRow row;
    row.vertex = u;
    row.p_no = p_no[u];
    row.p_yes = 1.0 - p_no[u];
    row.g_yes = g - table.CalgYes(u);
    row.g_no = g - table.CalgNo(u);
    row.gain = ExpectedGain(row.g_yes, row.g_no, row.p_yes, row.p_no);
    rows.push_back(row);
  }
  return rows;
}

VertexId KbmDpNextQuestion(const Hierarchy& h, const SessionState& state,
                           DpQuestionStats* stats) {
  const DpTable table = DpTable::Build(h, state);
  const std::vector<GainRow> rows = KbmDpGainAll(h, state, table);
  if (stats) {
    stats->candidates += static_cast<std::int64_t>(rows.size());
    stats->recomputations += table.recomputations();
  }
  return ArgmaxGain(h, rows).vertex;
}

}  // namespace igs
