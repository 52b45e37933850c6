#include "igs/session.h"

#include <algorithm>
#include <ostream>

#include "igs/dp.h"
#include "json.hpp"

namespace igs {

std::vector<VertexId> SessionState::Candidates() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < static_cast<VertexId>(in_p.size()); ++v) {
    if (IsCandidate(v)) out.push_back(v);
  }
  return out;
}

int SessionState::CandidateCount() const {
  int count = 0;
  for (std::size_t v = 0; v < in_p.size(); ++v) count += in_p[v] && !in_y[v];
  return count;
}

std::vector<VertexId> SessionState::PotentialTargets() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < static_cast<VertexId>(in_p.size()); ++v) {
    if (in_p[v]) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> SessionState::YesCandidates() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < static_cast<VertexId>(in_y.size()); ++v) {
    if (in_y[v]) out.push_back(v);
  }
  return out;
}

namespace {

void UpdateTermination(SessionState& s) {
  if (s.p_count == 0 || s.budget_remaining <= 0 || s.CandidateCount() == 0) {
    s.terminated = true;
  }
}

}  // namespace

SessionState InitSession(const Hierarchy& h, SearchMode mode, int budget, int k) {
  const int n = h.size();
  if (budget < 0) {
    throw SessionError(SessionError::Kind::kInvalidArgument, "budget must be >= 0");
  }
  if (mode == SearchMode::kSingle) k = 1;
  if (k < 1 || k > n) {
    throw SessionError(SessionError::Kind::kInvalidArgument,
                       "k must be in [1, " + std::to_string(n) + "]");
  }
  SessionState s;
  s.mode = mode;
  s.k = k;
  s.budget_total = budget;
  s.budget_remaining = budget;
  s.in_p.assign(n, 1);
  s.in_y.assign(n, 0);
  s.in_y[h.root()] = 1;
  s.p_count = n;
  s.y_count = 1;
  s.anchor = h.root();
  const double init = mode == SearchMode::kSingle ? 1.0 / n : static_cast<double>(k) / n;
  s.pr.assign(n, std::min(init, 1.0));
  UpdateTermination(s);
  return s;
}

void Renormalize(SessionState& state, int old_p_count) {
  if (state.p_count <= 0) {
    throw SessionError(SessionError::Kind::kEmptyPotentialTargets,
                       "cannot renormalize over an empty potential-target set");
  }
  const double scale = static_cast<double>(old_p_count) / state.p_count;
  for (std::size_t v = 0; v < state.pr.size(); ++v) {
    state.pr[v] = state.in_p[v] ? std::min(state.pr[v] * scale, 1.0) : 0.0;
  }
}

void ApplyAnswer(SessionState& s, const Hierarchy& h, VertexId q, Answer answer) {
  if (s.terminated) {
    throw SessionError(SessionError::Kind::kTerminated, "session has terminated");
  }
  if (s.budget_remaining <= 0) {
    throw SessionError(SessionError::Kind::kNoBudget, "question budget exhausted");
  }
  if (q < 0 || q >= h.size() || !s.IsCandidate(q)) {
    throw SessionError(SessionError::Kind::kInvalidQuestion,
                       "question is not a current candidate");
  }
  const int old_p = s.p_count;
  auto evict = [&](VertexId v) {
    if (s.in_p[v]) {
      s.in_p[v] = 0;
      --s.p_count;
    }
  };

  if (answer == Answer::kNo) {
    for (VertexId v : h.SubtreeVertices(q)) evict(v);
  } else if (s.mode == SearchMode::kSingle) {
    // P ⊆ des(anchor), so keeping des(q) means evicting everything else there.
    for (VertexId v : h.SubtreeVertices(s.anchor)) {
      if (!h.IsAncestor(q, v)) evict(v);
    }
    s.in_y[s.anchor] = 0;
    s.in_y[q] = 1;
    s.anchor = q;
  } else {
    for (VertexId v = q; v != kNoVertex; v = h.parent(v)) {
      if (!s.in_y[v]) {
        s.in_y[v] = 1;
        ++s.y_count;
      }
      if (v != q) evict(v);
    }
  }

  --s.budget_remaining;
  s.log.push_back({q, answer, s.p_count, s.y_count});
  if (s.p_count > 0) Renormalize(s, old_p);
  UpdateTermination(s);
}

std::vector<VertexId> FinalizeSelection(const SessionState& state, const Hierarchy& h) {
  if (state.mode == SearchMode::kSingle) return {state.anchor};
  if (state.p_count == 0) {
    // Contradictory answers emptied P: fall back to the latest k
    // pairwise-unrelated Yes answers.
    std::vector<VertexId> yes;
    for (auto it = state.log.rbegin(); it != state.log.rend(); ++it) {
      if (it->answer != Answer::kYes) continue;
      bool related = false;
      for (VertexId y : yes) related |= h.IsAncestor(it->question, y);
      if (!related) yes.push_back(it->question);
      if (static_cast<int>(yes.size()) == state.k) break;
    }
    if (yes.empty()) return {h.root()};
    std::sort(yes.begin(), yes.end());
    return yes;
  }
  return DpTable::Build(h, state.in_p, state.in_y, state.k).ExtractSelection();
}

Penalty CurrentPotentialPenalty(const SessionState& state, const Hierarchy& h) {
  if (state.mode == SearchMode::kSingle) {
    const VertexId s = state.anchor;
    return SetPenaltyMasked(h, std::span<const VertexId>(&s, 1), state.in_p);
  }
  return DpTable::Build(h, state.in_p, state.in_y, state.k).Value();
}

void WriteSessionLogLine(std::ostream& out, const Hierarchy& h, const QuestionRecord& record,
                         Penalty penalty_so_far) {
  nlohmann::ordered_json line;
  line["q"] = h.label(record.question);
  line["answer"] = AnswerName(record.answer);
  line["p_size"] = record.p_size_after;
  line["y_size"] = record.y_size_after;
  line["penalty_so_far"] = penalty_so_far;
  out << line.dump() << '\n';
}

}  // namespace igs
