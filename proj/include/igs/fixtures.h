#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "igs/hierarchy.h"

namespace igs {

// Ten-vertex reference hierarchy: v0 -> {v1, v2}, v1 -> {v3, v4, v5},
// v3 -> {v6, v7, v8}, v5 -> {v9}.
Hierarchy ReferenceHierarchy();

struct FixtureCell {
  std::string table;   // "single" or "multi"
  std::string row;     // e.g. "gYes", "Gain2"
  std::string vertex;  // column label
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct FixtureReport {
  std::vector<FixtureCell> cells;
  std::vector<std::string> questions_single;
  std::vector<std::string> questions_multi;
  bool ok = false;
  int mismatches() const;
};

// Recomputes the reference gain tables of the reference hierarchy (single
// target {v5}; two targets {v5, v8} with k = 2; budget 2) and compares every
// printed cell. Reals are formatted with printf to the printed number of
// decimals; "/" marks a vertex that is not a candidate in that round.
// `initial_pr` overrides the uniform prior (negative control).
FixtureReport VerifyFixtures(std::optional<double> initial_pr = std::nullopt);

void PrintFixtureReport(const FixtureReport& report, std::ostream& out, bool verbose);

}  // namespace igs
