#include "igs/engine.h"

#include "igs/bing.h"
#include "igs/dp.h"
#include "igs/stbis.h"
#include "igs/topk.h"

namespace igs {

std::optional<Algorithm> ParseAlgorithm(std::string_view name, int k) {
  if (name == "stbis") return Algorithm::kStbis;
  if (name == "kbm-dp") return Algorithm::kKbmDp;
  if (name == "kbm-topk") return Algorithm::kKbmTopk;
  if (name == "kbm-dp-plus") return Algorithm::kKbmDpPlus;
  if (name == "bing-single") return Algorithm::kBingSingle;
  if (name == "bing-multi") return Algorithm::kBingMulti;
  if (name == "bing") return k == 1 ? Algorithm::kBingSingle : Algorithm::kBingMulti;
  return std::nullopt;
}

std::string_view AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kStbis: return "stbis";
    case Algorithm::kKbmDp: return "kbm-dp";
    case Algorithm::kKbmTopk: return "kbm-topk";
    case Algorithm::kKbmDpPlus: return "kbm-dp-plus";
    case Algorithm::kBingSingle: return "bing-single";
    case Algorithm::kBingMulti: return "bing-multi";
  }
  return "?";
}

SearchMode ModeOf(Algorithm algo) {
  return (algo == Algorithm::kStbis || algo == Algorithm::kBingSingle) ? SearchMode::kSingle
                                                                        : SearchMode::kMulti;
}

namespace {

class StbisSelector : public QuestionSelector {
 public:
  explicit StbisSelector(const Hierarchy& h) : h_(h) {}
  VertexId Next(const SessionState& s) override {
    evaluations_ += s.CandidateCount();
    return StbisNextQuestion(h_, s);
  }

 private:
  const Hierarchy& h_;
};

class DpSelector : public QuestionSelector {
 public:
  explicit DpSelector(const Hierarchy& h) : h_(h) {}
  VertexId Next(const SessionState& s) override {
    DpQuestionStats stats;
    const VertexId q = KbmDpNextQuestion(h_, s, &stats);
    evaluations_ += stats.candidates;
    return q;
  }

 private:
  const Hierarchy& h_;
};

class TopkSelector : public QuestionSelector {
 public:
  explicit TopkSelector(const Hierarchy& h) : h_(h) {}
  VertexId Next(const SessionState& s) override {
    evaluations_ += s.CandidateCount();
    return KbmTopkNextQuestion(h_, s);
  }

 private:
  const Hierarchy& h_;
};

class DpPlusSelector : public QuestionSelector {
 public:
  DpPlusSelector(const Hierarchy& h, const FirstRoundCache& cache) : h_(h), bounds_(cache) {}
  VertexId Next(const SessionState& s) override {
    DpPlusRoundStats stats;
    const VertexId q = KbmDpPlusNextQuestion(h_, s, bounds_, &stats);
    evaluations_ += stats.evaluated;
    return q;
  }

 private:
  const Hierarchy& h_;
  GainBounds bounds_;
};

class BingSelector : public QuestionSelector {
 public:
  BingSelector(const Hierarchy& h, SearchMode mode) : h_(h), mode_(mode) {}
  VertexId Next(const SessionState& s) override {
    evaluations_ += s.CandidateCount();
    return mode_ == SearchMode::kSingle ? BingNextQuestionSingle(h_, s)
                                        : BingNextQuestionMulti(h_, s);
  }

 private:
  const Hierarchy& h_;
  SearchMode mode_;
};

}  // namespace

std::unique_ptr<QuestionSelector> MakeSelector(Algorithm algo, const Hierarchy& h, int k,
                                               const FirstRoundCache* cache) {
  switch (algo) {
    case Algorithm::kStbis: return std::make_unique<StbisSelector>(h);
    case Algorithm::kKbmDp: return std::make_unique<DpSelector>(h);
    case Algorithm::kKbmTopk: return std::make_unique<TopkSelector>(h);
    case Algorithm::kKbmDpPlus:
      if (cache) {
        if (cache->hierarchy_hash != h.ContentHash() || cache->k != k) {
          throw CacheMismatchError("first-round cache was built for another (hierarchy, k)");
        }
        return std::make_unique<DpPlusSelector>(h, *cache);
      }
      return std::make_unique<DpPlusSelector>(h, PrecomputeFirstRound(h, k));
    case Algorithm::kBingSingle: return std::make_unique<BingSelector>(h, SearchMode::kSingle);
    case Algorithm::kBingMulti: return std::make_unique<BingSelector>(h, SearchMode::kMulti);
  }
  return nullptr;
}

SessionResult RunSession(const Hierarchy& h, QuestionSelector& selector, SearchMode mode,
                         int budget, int k, const AnswerSource& answer,
                         const RoundObserver& after_answer) {
  SessionResult result;
  result.state = InitSession(h, mode, budget, k);
  while (!result.state.terminated) {
    const VertexId q = selector.Next(result.state);
    ApplyAnswer(result.state, h, q, answer(q));
    if (after_answer) after_answer(result.state);
  }
  result.selection = FinalizeSelection(result.state, h);
  result.evaluations = selector.evaluations();
  return result;
}

}  // namespace igs
