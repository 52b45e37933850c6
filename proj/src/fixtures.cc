#include "igs/fixtures.h"

#include <cstdio>
#include <ostream>

#include "igs/dp.h"
#include "igs/oracle.h"
#include "igs/session.h"
#include "igs/stbis.h"

namespace igs {
namespace {

constexpr int kColumns = 9;  // v1..v9

struct PrintedRow {
  const char* name;
  const char* cells[kColumns];
};

constexpr PrintedRow kSingleTable[] = {
    {"gYes", {"9", "20", "17", "20", "19", "20", "20", "20", "20"}},
    {"gNo", {"19", "1", "11", "2", "5", "3", "3", "3", "3"}},
    {"pYes", {"0.8", "0.1", "0.4", "0.1", "0.2", "0.1", "0.1", "0.1", "0.1"}},
    {"pNo", {"0.2", "0.9", "0.6", "0.9", "0.8", "0.9", "0.9", "0.9", "0.9"}},
    {"Gain1", {"11", "2.9", "13.4", "3.8", "7.8", "4.7", "4.7", "4.7", "4.7"}},
    {"Gain2", {"6", "2.33", "/", "3.17", "6", "/", "/", "/", "4"}},
};

constexpr PrintedRow kMultiTable[] = {
    {"gYes1", {"8", "1", "12", "9", "10", "12", "12", "12", "11"}},
    {"gNo1", {"19", "1", "11", "2", "5", "3", "3", "3", "3"}},
    {"Gain1", {"9.85", "1", "11.59", "3.4", "6.8", "4.8", "4.8", "4.8", "4.6"}},
    {"gYes2", {"/", "0", "/", "0", "1", "0", "0", "0", "2"}},
    {"gNo2", {"/", "1", "/", "1", "3", "1", "1", "1", "2"}},
    {"Gain2", {"/", "0.75", "/", "0.75", "2.12", "0.75", "0.75", "0.75", "2"}},
};

int Decimals(const std::string& printed) {
  const auto dot = printed.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
}

std::string Format(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

enum class Field { kGYes, kGNo, kPYes, kPNo, kGain };

std::optional<double> Pick(const std::vector<GainRow>& rows, VertexId v, Field f) {
  for (const GainRow& r : rows) {
    if (r.vertex != v) continue;
    switch (f) {
      case Field::kGYes: return static_cast<double>(r.g_yes);
      case Field::kGNo: return static_cast<double>(r.g_no);
      case Field::kPYes: return r.p_yes;
      case Field::kPNo: return r.p_no;
      case Field::kGain: return r.gain;
    }
  }
  return std::nullopt;
}

void Compare(FixtureReport& report, const char* table, const PrintedRow& printed,
             const std::vector<GainRow>& rows, Field field) {
  for (int c = 0; c < kColumns; ++c) {
    FixtureCell cell;
    cell.table = table;
    cell.row = printed.name;
    cell.vertex = "v" + std::to_string(c + 1);
    cell.expected = printed.cells[c];
    const auto value = Pick(rows, c + 1, field);
    cell.actual = value ? Format(*value, Decimals(cell.expected)) : "/";
    cell.ok = cell.actual == cell.expected;
    report.cells.push_back(cell);
  }
}

void OverridePrior(SessionState& s, std::optional<double> pr) {
  if (pr) s.pr.assign(s.pr.size(), *pr);
}

}  // namespace

Hierarchy ReferenceHierarchy() {
  std::vector<std::string> names;
  for (int i = 0; i < 10; ++i) names.push_back("v" + std::to_string(i));
  return Hierarchy::FromParents(names, names, {kNoVertex, 0, 0, 1, 1, 1, 3, 3, 3, 5});
}

int FixtureReport::mismatches() const {
  int bad = 0;
  for (const FixtureCell& c : cells) bad += !c.ok;
  return bad;
}

FixtureReport VerifyFixtures(std::optional<double> initial_pr) {
  const Hierarchy h = ReferenceHierarchy();
  FixtureReport report;

  {
    const TargetSet targets(h, {5});
    SessionState s = InitSession(h, SearchMode::kSingle, 2, 1);
    OverridePrior(s, initial_pr);
    const auto round1 = DfsGainAll(h, s);
    Compare(report, "single", kSingleTable[0], round1, Field::kGYes);
    Compare(report, "single", kSingleTable[1], round1, Field::kGNo);
    Compare(report, "single", kSingleTable[2], round1, Field::kPYes);
    Compare(report, "single", kSingleTable[3], round1, Field::kPNo);
    Compare(report, "single", kSingleTable[4], round1, Field::kGain);
    const VertexId q1 = ArgmaxGain(h, round1).vertex;
    report.questions_single.push_back(h.label(q1));
    ApplyAnswer(s, h, q1, TruthfulAnswer(h, targets, q1));
    const auto round2 = DfsGainAll(h, s);
    Compare(report, "single", kSingleTable[5], round2, Field::kGain);
    if (!s.terminated) {
      report.questions_single.push_back(h.label(ArgmaxGain(h, round2).vertex));
    }
  }

  {
    const TargetSet targets(h, {5, 8});
    SessionState s = InitSession(h, SearchMode::kMulti, 2, 2);
    OverridePrior(s, initial_pr);
    const auto round1 = KbmDpGainAll(h, s, DpTable::Build(h, s));
    Compare(report, "multi", kMultiTable[0], round1, Field::kGYes);
    Compare(report, "multi", kMultiTable[1], round1, Field::kGNo);
    Compare(report, "multi", kMultiTable[2], round1, Field::kGain);
    const VertexId q1 = ArgmaxGain(h, round1).vertex;
    report.questions_multi.push_back(h.label(q1));
    ApplyAnswer(s, h, q1, TruthfulAnswer(h, targets, q1));
    const auto round2 = KbmDpGainAll(h, s, DpTable::Build(h, s));
    Compare(report, "multi", kMultiTable[3], round2, Field::kGYes);
    Compare(report, "multi", kMultiTable[4], round2, Field::kGNo);
    Compare(report, "multi", kMultiTable[5], round2, Field::kGain);
    if (!s.terminated) {
      report.questions_multi.push_back(h.label(ArgmaxGain(h, round2).vertex));
    }
  }

  report.ok = report.mismatches() == 0 &&
              report.questions_single == std::vector<std::string>{"v3", "v5"} &&
              report.questions_multi == std::vector<std::string>{"v3", "v5"};
  return report;
}

void PrintFixtureReport(const FixtureReport& report, std::ostream& out, bool verbose) {
  for (const FixtureCell& c : report.cells) {
    if (!verbose && c.ok) continue;
    out << (c.ok ? "ok   " : "FAIL ") << c.table << ' ' << c.row << ' ' << c.vertex
        << " expected=" << c.expected << " actual=" << c.actual << '\n';
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
  };
  out << "single questions: " << join(report.questions_single) << '\n';
  out << "multi questions: " << join(report.questions_multi) << '\n';
  out << report.cells.size() - report.mismatches() << '/' << report.cells.size()
      << " cells match; " << (report.ok ? "PASS" : "FAIL") << '\n';
}

}  // namespace igs
