#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "igs/dp_plus.h"
#include "igs/hierarchy.h"
#include "igs/oracle.h"
#include "igs/session.h"

namespace igs {

enum class Algorithm { kStbis, kKbmDp, kKbmTopk, kKbmDpPlus, kBingSingle, kBingMulti };

// Accepts stbis, kbm-dp, kbm-topk, kbm-dp-plus, bing-single, bing-multi, and
// bing (single when k == 1, multi otherwise).
std::optional<Algorithm> ParseAlgorithm(std::string_view name, int k);
std::string_view AlgorithmName(Algorithm algo);
SearchMode ModeOf(Algorithm algo);

// Picks the next question of a live session. Stateful selectors (kbm-dp-plus)
// expect to see every round of one session in order.
class QuestionSelector {
 public:
  virtual ~QuestionSelector() = default;
  virtual VertexId Next(const SessionState& state) = 0;

  // Candidates whose exact gain was computed, summed over rounds.
  std::int64_t evaluations() const { return evaluations_; }

 protected:
  std::int64_t evaluations_ = 0;
};

// `cache` is used by kbm-dp-plus only; when null it is computed on the spot.
std::unique_ptr<QuestionSelector> MakeSelector(Algorithm algo, const Hierarchy& h, int k,
                                               const FirstRoundCache* cache = nullptr);

using AnswerSource = std::function<Answer(VertexId)>;
using RoundObserver = std::function<void(const SessionState&)>;

struct SessionResult {
  SessionState state;
  std::vector<VertexId> selection;
  std::int64_t evaluations = 0;
};

// Ask / answer / update until the session terminates, then finalize.
SessionResult RunSession(const Hierarchy& h, QuestionSelector& selector, SearchMode mode,
                         int budget, int k, const AnswerSource& answer,
                         const RoundObserver& after_answer = {});

}  // namespace igs
