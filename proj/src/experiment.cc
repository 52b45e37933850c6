#include "igs/experiment.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "igs/penalty.h"
#include "json.hpp"

namespace igs {

Hierarchy GenRandomTree(int n, int max_degree, std::uint64_t seed) {
  if (n < 1) throw GeneratorError("tree size must be >= 1");
  if (n > 1 && max_degree < 1) throw GeneratorError("max_degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::string> names(n);
  std::vector<VertexId> parents(n, kNoVertex);
  std::vector<int> degree(n, 0);
  std::vector<VertexId> open{0};  // vertices that can still take a child
  names[0] = "v0";
  for (VertexId v = 1; v < n; ++v) {
    names[v] = "v" + std::to_string(v);
    const std::size_t slot = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
    const VertexId p = open[slot];
    parents[v] = p;
    if (++degree[p] == max_degree) {
      open[slot] = open.back();
      open.pop_back();
    }
    open.push_back(v);
  }
  return Hierarchy::FromParents(names, names, parents);
}

TargetSet SampleTargets(const Hierarchy& h, int min_count, int max_count, std::mt19937_64& rng) {
  if (min_count < 1 || max_count < min_count) throw GeneratorError("invalid target count range");
  int leaves = 0;
  for (VertexId v = 0; v < h.size(); ++v) leaves += h.children(v).empty();
  if (min_count > leaves) {
    throw GeneratorError("cannot place " + std::to_string(min_count) +
                         " independent targets in a tree with " + std::to_string(leaves) +
                         " leaves");
  }
  const int count =
      std::uniform_int_distribution<int>(min_count, std::min(max_count, leaves))(rng);
  std::vector<VertexId> eligible;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<VertexId> chosen;
    while (static_cast<int>(chosen.size()) < count) {
      eligible.clear();
      for (VertexId v = 0; v < h.size(); ++v) {
        bool free = true;
        for (VertexId t : chosen) free &= !h.IsAncestor(v, t) && !h.IsAncestor(t, v);
        if (free) eligible.push_back(v);
      }
      if (eligible.empty()) break;
      chosen.push_back(
          eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)]);
    }
    if (static_cast<int>(chosen.size()) == count) return TargetSet(h, std::move(chosen));
  }
  throw GeneratorError("target sampling did not converge");
}

std::vector<TargetSet> SampleTargetSuite(const Hierarchy& h, int objects, int min_count,
                                         int max_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TargetSet> out;
  out.reserve(objects);
  for (int i = 0; i < objects; ++i) out.push_back(SampleTargets(h, min_count, max_count, rng));
  return out;
}

void ExperimentConfig::Validate() const {
  if (algorithms.empty()) throw ExperimentError("no algorithms given");
  if (budgets.empty()) throw ExperimentError("no budgets given");
  if (ks.empty()) throw ExperimentError("no k values given");
  for (int b : budgets) {
    if (b < 1) throw ExperimentError("budgets must be >= 1");
  }
  for (const auto& name : algorithms) {
    if (!ParseAlgorithm(name, 1)) throw ExperimentError("unknown algorithm '" + name + "'");
  }
  if (noise) noise->Validate();
}

std::vector<ExperimentSummary> ExperimentReport::Summaries() const {
  std::vector<ExperimentSummary> out;
  for (const ExperimentRow& row : rows) {
    if (out.empty() || out.back().algorithm != row.algorithm || out.back().b != row.b ||
        out.back().k != row.k) {
      out.push_back({row.algorithm, row.b, row.k});
    }
    ExperimentSummary& s = out.back();
    ++s.objects;
    s.mean_penalty += static_cast<double>(row.penalty);
    s.mean_per_question_us += row.per_question_us;
    s.mean_total_us += row.total_us;
    s.mean_questions += row.questions;
  }
  for (ExperimentSummary& s : out) {
    s.mean_penalty /= s.objects;
    s.mean_per_question_us /= s.objects;
    s.mean_total_us /= s.objects;
    s.mean_questions /= s.objects;
  }
  return out;
}

ExperimentReport RunExperiment(const Hierarchy& h, const std::vector<TargetSet>& objects,
                               const ExperimentConfig& cfg) {
  cfg.Validate();
  using Clock = std::chrono::steady_clock;
  std::vector<int> budgets = cfg.budgets;
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  const int max_b = budgets.back();
  const int n_objects = static_cast<int>(objects.size());
  std::vector<bool> difficult(n_objects, false);
  if (cfg.noise) difficult = SampleDifficulty(n_objects, *cfg.noise);

  ExperimentReport report;
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    const std::string& name = cfg.algorithms[a];
    std::set<int> ks;
    for (int k : cfg.ks) {
      const Algorithm algo = *ParseAlgorithm(name, k);
      ks.insert(ModeOf(algo) == SearchMode::kSingle ? 1 : k);
    }
    for (int k : ks) {
      const Algorithm algo = *ParseAlgorithm(name, k);
      std::optional<FirstRoundCache> cache;
      if (algo == Algorithm::kKbmDpPlus) {
        cache = LoadOrComputeFirstRound(
            h, k, cfg.dp_plus_cache_path.empty() ? "" : cfg.dp_plus_cache_path + ".k" +
                                                            std::to_string(k));
      }
      for (int obj = 0; obj < n_objects; ++obj) {
        try {
          auto selector = MakeSelector(algo, h, k, cache ? &*cache : nullptr);
          SimulatedOracle oracle =
              cfg.noise ? SimulatedOracle(h, objects[obj], *cfg.noise, difficult[obj],
                                          static_cast<std::uint64_t>(obj))
                        : SimulatedOracle(h, objects[obj]);
          SessionState state = InitSession(h, ModeOf(algo), max_b, k);
          double elapsed_us = 0.0;
          std::size_t next_checkpoint = 0;
          auto record = [&](int b) {
            const auto t0 = Clock::now();
            const std::vector<VertexId> sel = FinalizeSelection(state, h);
            const double fin_us =
                std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
            ExperimentRow row;
            row.algorithm = name;
            row.b = b;
            row.k = k;
            row.object_id = obj;
            row.penalty = SetPenalty(h, sel, objects[obj].members());
            row.questions = static_cast<int>(state.log.size());
            if (cfg.record_timing) {
              row.total_us = elapsed_us + fin_us;
              row.per_question_us = row.questions ? elapsed_us / row.questions : 0.0;
            }
            report.rows.push_back(row);
          };
          while (next_checkpoint < budgets.size()) {
            const int asked = static_cast<int>(state.log.size());
            if (state.terminated || asked == budgets[next_checkpoint]) {
              record(budgets[next_checkpoint++]);
              continue;
            }
            const auto t0 = Clock::now();
            const VertexId q = selector->Next(state);
            ApplyAnswer(state, h, q, oracle.Ask(q));
            elapsed_us += std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
          }
        } catch (const std::exception& e) {
          throw ExperimentError("algorithm " + name + ", k=" + std::to_string(k) +
                                ", object " + std::to_string(obj) + ": " + e.what());
        }
      }
    }
  }
  std::map<std::string, std::size_t> algo_rank;
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    algo_rank.emplace(cfg.algorithms[a], a);
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [&](const ExperimentRow& x, const ExperimentRow& y) {
                     return std::tuple(algo_rank[x.algorithm], x.b, x.k, x.object_id) <
                            std::tuple(algo_rank[y.algorithm], y.b, y.k, y.object_id);
                   });
  return report;
}

void WriteCsv(const ExperimentReport& report, std::ostream& out) {
  out << "algorithm,b,k,object_id,penalty,questions,total_us,per_question_us\n";
  char buf[64];
  for (const ExperimentRow& r : report.rows) {
    out << r.algorithm << ',' << r.b << ',' << r.k << ',' << r.object_id << ',' << r.penalty
        << ',' << r.questions << ',';
    std::snprintf(buf, sizeof buf, "%.1f,%.3f", r.total_us, r.per_question_us);
    out << buf << '\n';
  }
}

void WriteJson(const ExperimentReport& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ExperimentRow& r : report.rows) {
    doc["rows"].push_back({{"algorithm", r.algorithm},
                           {"b", r.b},
                           {"k", r.k},
                           {"object_id", r.object_id},
                           {"penalty", r.penalty},
                           {"questions", r.questions},
                           {"total_us", r.total_us},
                           {"per_question_us", r.per_question_us}});
  }
  doc["summary"] = nlohmann::ordered_json::array();
  for (const ExperimentSummary& s : report.Summaries()) {
    doc["summary"].push_back({{"algorithm", s.algorithm},
                              {"b", s.b},
                              {"k", s.k},
                              {"objects", s.objects},
                              {"mean_penalty", s.mean_penalty},
                              {"mean_per_question_us", s.mean_per_question_us},
                              {"mean_total_us", s.mean_total_us},
                              {"mean_questions", s.mean_questions}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace igs
