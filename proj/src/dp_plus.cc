#include "igs/dp_plus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "igs/dp.h"
#include "json.hpp"

namespace igs {

FirstRoundCache PrecomputeFirstRound(const Hierarchy& h, int k) {
  const SessionState s = InitSession(h, SearchMode::kMulti, 1, k);
  const DpTable table = DpTable::Build(h, s);
  FirstRoundCache cache;
  cache.hierarchy_hash = h.ContentHash();
  cache.k = s.k;
  cache.g_yes.assign(h.size(), 0);
  cache.g_no.assign(h.size(), 0);
  const Penalty g = table.Value();
  for (VertexId v = 0; v < h.size(); ++v) {
    if (v == h.root()) continue;
    cache.g_yes[v] = g - table.CalgYes(v);
    cache.g_no[v] = g - table.CalgNo(v);
  }
  return cache;
}

void WriteFirstRoundCache(const FirstRoundCache& cache, std::ostream& out) {
  nlohmann::json doc;
  // Hex string: JSON numbers do not round-trip 64-bit hashes everywhere.
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(cache.hierarchy_hash));
  doc["hierarchy_hash"] = hash;
  doc["k"] = cache.k;
  doc["g_yes"] = cache.g_yes;
  doc["g_no"] = cache.g_no;
  out << doc.dump() << '\n';
}

FirstRoundCache ReadFirstRoundCache(std::istream& in) {
  FirstRoundCache cache;
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    cache.hierarchy_hash = std::stoull(doc.at("hierarchy_hash").get<std::string>(), nullptr, 16);
    cache.k = doc.at("k").get<int>();
    cache.g_yes = doc.at("g_yes").get<std::vector<Penalty>>();
    cache.g_no = doc.at("g_no").get<std::vector<Penalty>>();
  } catch (const std::exception& e) {
    throw CacheMismatchError(std::string("unreadable first-round cache: ") + e.what());
  }
  if (cache.g_yes.size() != cache.g_no.size()) {
    throw CacheMismatchError("first-round cache arrays differ in length");
  }
  return cache;
}

FirstRoundCache LoadOrComputeFirstRound(const Hierarchy& h, int k, const std::string& path) {
  if (!path.empty()) {
    std::ifstream in(path);
    if (in) {
      try {
        FirstRoundCache cache = ReadFirstRoundCache(in);
        if (cache.hierarchy_hash == h.ContentHash() && cache.k == k &&
            static_cast<int>(cache.g_yes.size()) == h.size()) {
          return cache;
        }
      } catch (const CacheMismatchError&) {
        // stale or corrupt: recompute below
      }
    }
  }
  FirstRoundCache cache = PrecomputeFirstRound(h, k);
  if (!path.empty()) {
    std::ofstream out(path);
    if (out) WriteFirstRoundCache(cache, out);
  }
  return cache;
}

void GainBounds::Update(std::span<const GainRow> exact_rows) {
  for (const GainRow& row : exact_rows) {
    if (row.g_yes > ub_yes_[row.vertex] || row.g_no > ub_no_[row.vertex]) ++violations_;
    ub_yes_[row.vertex] = row.g_yes;
    ub_no_[row.vertex] = row.g_no;
  }
}

VertexId KbmDpPlusNextQuestion(const Hierarchy& h, const SessionState& state,
                               GainBounds& bounds, DpPlusRoundStats* stats) {
  const std::vector<VertexId> candidates = state.Candidates();
  if (candidates.empty()) throw EmptyCandidatePoolError();
  const std::vector<double> p_no = MultiNoProbabilities(h, state);

  struct Bounded {
    VertexId v;
    double bound;
  };
  std::vector<Bounded> order;
  order.reserve(candidates.size());
  for (VertexId v : candidates) {
    order.push_back(
        {v, ExpectedGain(bounds.ub_yes(v), bounds.ub_no(v), 1.0 - p_no[v], p_no[v])});
  }
  std::sort(order.begin(), order.end(), [&](const Bounded& a, const Bounded& b) {
    return GainPreferred(h, a.bound, a.v, b.bound, b.v);
  });

  const DpTable table = DpTable::Build(h, state);
  const Penalty g = table.Value();
  std::vector<GainRow> evaluated;
  const GainRow* best = nullptr;
  for (const Bounded& c : order) {
    if (best && best->gain > c.bound && !GainsTie(best->gain, c.bound)) break;
    GainRow row;
    row.vertex = c.v;
    row.p_no = p_no[c.v];
    row.p_yes = 1.0 - p_no[c.v];
    row.g_yes = g - table.CalgYes(c.v);
    row.g_no = g - table.CalgNo(c.v);
    row.gain = ExpectedGain(row.g_yes, row.g_no, row.p_yes, row.p_no);
    evaluated.push_back(row);
    best = &ArgmaxGain(h, evaluated);
  }
  const VertexId chosen = best->vertex;
  if (stats) {
    stats->pool += static_cast<std::int64_t>(candidates.size());
    stats->evaluated += static_cast<std::int64_t>(evaluated.size());
  }
  bounds.Update(evaluated);
  return chosen;
}

}  // namespace igs
