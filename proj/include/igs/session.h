#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "igs/hierarchy.h"
#include "igs/oracle.h"
#include "igs/penalty.h"

namespace igs {

enum class SearchMode { kSingle, kMulti };

class SessionError : public std::logic_error {
 public:
  enum class Kind { kInvalidArgument, kInvalidQuestion, kNoBudget, kTerminated, kEmptyPotentialTargets };

  SessionError(Kind kind, const std::string& message)
      : std::logic_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct QuestionRecord {
  VertexId question = kNoVertex;
  Answer answer = Answer::kNo;
  int p_size_after = 0;
  int y_size_after = 0;
};

// Live search state. P = potential targets, Y = Yes-candidates. In single mode
// Y is kept as the single deepest Yes vertex (`anchor`).
struct SessionState {
  SearchMode mode = SearchMode::kMulti;
  int k = 1;
  int budget_total = 0;
  int budget_remaining = 0;
  std::vector<std::uint8_t> in_p;
  std::vector<std::uint8_t> in_y;
  int p_count = 0;
  int y_count = 0;
  std::vector<double> pr;
  VertexId anchor = kNoVertex;
  std::vector<QuestionRecord> log;
  bool terminated = false;

  bool InP(VertexId v) const { return in_p[v] != 0; }
  bool InY(VertexId v) const { return in_y[v] != 0; }
  bool IsCandidate(VertexId v) const { return in_p[v] && !in_y[v]; }

  // P \ Y in id order.
  std::vector<VertexId> Candidates() const;
  int CandidateCount() const;
  std::vector<VertexId> PotentialTargets() const;
  std::vector<VertexId> YesCandidates() const;
};

// P = V, Y = {root}, pr = 1/n (single) or k/n (multi). The root's implicit Yes
// is free. k is forced to 1 in single mode.
SessionState InitSession(const Hierarchy& h, SearchMode mode, int budget, int k);

// Applies one answered question and renormalizes probabilities.
// Single: Yes -> P = des(q) ∩ P, Y = {q};  No -> P = P \ des(q).
// Multi:  Yes -> Y = Y ∪ anc(q), P = P \ (anc(q) \ {q});  No -> P = P \ des(q).
void ApplyAnswer(SessionState& state, const Hierarchy& h, VertexId q, Answer answer);

// pr(u) = 0 for evicted u, min(pr(u)·|P_old|/|P_new|, 1) for survivors.
void Renormalize(SessionState& state, int old_p_count);

// Optimal selection S ⊆ Y, |S| <= k, minimizing f(S, P). Single mode returns
// the anchor. Never empty: falls back to the root.
std::vector<VertexId> FinalizeSelection(const SessionState& state, const Hierarchy& h);

// g(Y, P, k) of the current state.
Penalty CurrentPotentialPenalty(const SessionState& state, const Hierarchy& h);

// One JSON object per line:
// {"q":label,"answer":"Yes"|"No","p_size":int,"y_size":int,"penalty_so_far":int}
void WriteSessionLogLine(std::ostream& out, const Hierarchy& h, const QuestionRecord& record,
                         Penalty penalty_so_far);

}  // namespace igs
