#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "igs/gain.h"
#include "igs/hierarchy.h"
#include "igs/session.h"

namespace igs {

// Exact first-question gYes/gNo of every vertex for a given k. Depends only on
// the hierarchy, so it can be computed once and stored next to it.
struct FirstRoundCache {
  std::uint64_t hierarchy_hash = 0;
  int k = 1;
  std::vector<Penalty> g_yes;
  std::vector<Penalty> g_no;
};

class CacheMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FirstRoundCache PrecomputeFirstRound(const Hierarchy& h, int k);

void WriteFirstRoundCache(const FirstRoundCache& cache, std::ostream& out);
FirstRoundCache ReadFirstRoundCache(std::istream& in);

// Reads `path` when it holds a cache for (h, k); otherwise computes one and
// writes it there. An empty path just computes.
FirstRoundCache LoadOrComputeFirstRound(const Hierarchy& h, int k, const std::string& path);

// Per-vertex upper bounds on gYes/gNo carried between rounds.
class GainBounds {
 public:
  explicit GainBounds(const FirstRoundCache& cache)
      : ub_yes_(cache.g_yes), ub_no_(cache.g_no) {}

  Penalty ub_yes(VertexId v) const { return ub_yes_[v]; }
  Penalty ub_no(VertexId v) const { return ub_no_[v]; }

  // Evaluated vertices take their fresh exact values; the rest keep theirs.
  // A fresh value above the carried bound is counted as a violation.
  void Update(std::span<const GainRow> exact_rows);

  std::int64_t violations() const { return violations_; }

 private:
  std::vector<Penalty> ub_yes_;
  std::vector<Penalty> ub_no_;
  std::int64_t violations_ = 0;
};

struct DpPlusRoundStats {
  std::int64_t pool = 0;
  std::int64_t evaluated = 0;
};

// Candidates are opened in descending bound order until the best exact gain
// found so far strictly exceeds the next bound.
VertexId KbmDpPlusNextQuestion(const Hierarchy& h, const SessionState& state,
                               GainBounds& bounds, DpPlusRoundStats* stats = nullptr);

}  // namespace igs
