#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "igs/hierarchy.h"
#include "igs/penalty.h"

namespace igs {

// One candidate's expected-gain breakdown: Gain = gYes·pYes + gNo·pNo.
struct GainRow {
  VertexId vertex = kNoVertex;
  double p_yes = 0.0;
  double p_no = 0.0;
  Penalty g_yes = 0;
  Penalty g_no = 0;
  double gain = 0.0;
};

using SingleGainRow = GainRow;

inline double ExpectedGain(Penalty g_yes, Penalty g_no, double p_yes, double p_no) {
  return static_cast<double>(g_yes) * p_yes + static_cast<double>(g_no) * p_no;
}

inline constexpr double kGainTolerance = 1e-9;

inline bool GainsTie(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kGainTolerance * scale;
}

// Question ordering: larger gain first; within tolerance the deeper vertex,
// then the smaller id.
inline bool GainPreferred(const Hierarchy& h, double gain_a, VertexId a, double gain_b,
                          VertexId b) {
  if (!GainsTie(gain_a, gain_b)) return gain_a > gain_b;
  if (h.depth(a) != h.depth(b)) return h.depth(a) > h.depth(b);
  return a < b;
}

class EmptyCandidatePoolError : public std::logic_error {
 public:
  EmptyCandidatePoolError() : std::logic_error("no candidate questions remain") {}
};

inline const GainRow& ArgmaxGain(const Hierarchy& h, std::span<const GainRow> rows) {
  if (rows.empty()) throw EmptyCandidatePoolError();
  const GainRow* best = &rows.front();
  for (const GainRow& row : rows.subspan(1)) {
    if (GainPreferred(h, row.gain, row.vertex, best->gain, best->vertex)) best = &row;
  }
  return *best;
}

}  // namespace igs
