#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "igs/engine.h"
#include "igs/hierarchy.h"
#include "igs/oracle.h"

namespace igs {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Random tree: vertex i attaches to a uniformly chosen earlier vertex that
// still has fewer than `max_degree` children. Names and labels are "v<i>".
Hierarchy GenRandomTree(int n, int max_degree, std::uint64_t seed);

// Independent target set whose size is drawn uniformly from
// [min_count, max_count]. Each member is drawn uniformly from the vertices
// unrelated to the members already chosen; a dead end restarts the draw.
TargetSet SampleTargets(const Hierarchy& h, int min_count, int max_count, std::mt19937_64& rng);

std::vector<TargetSet> SampleTargetSuite(const Hierarchy& h, int objects, int min_count,
                                         int max_count, std::uint64_t seed);

struct ExperimentConfig {
  std::vector<std::string> algorithms;
  std::vector<int> budgets;
  std::vector<int> ks;
  std::optional<NoisyOracleConfig> noise;
  std::uint64_t seed = 0;
  bool record_timing = true;
  std::string dp_plus_cache_path;

  void Validate() const;
};

struct ExperimentRow {
  std::string algorithm;
  int b = 0;
  int k = 0;
  int object_id = 0;
  Penalty penalty = 0;
  int questions = 0;
  double total_us = 0.0;
  double per_question_us = 0.0;
};

struct ExperimentSummary {
  std::string algorithm;
  int b = 0;
  int k = 0;
  int objects = 0;
  double mean_penalty = 0.0;
  double mean_per_question_us = 0.0;
  double mean_total_us = 0.0;
  double mean_questions = 0.0;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentSummary> Summaries() const;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every (algorithm, k, object) session runs once up to the largest budget; the
// selection is finalized at each budget in `cfg.budgets` along the way, so a
// smaller budget sees a prefix of the same question sequence. Single-target
// algorithms run with k = 1 only. Rows are ordered by (algorithm, b, k, object).
ExperimentReport RunExperiment(const Hierarchy& h, const std::vector<TargetSet>& objects,
                               const ExperimentConfig& cfg);

// algorithm,b,k,object_id,penalty,questions,total_us,per_question_us
void WriteCsv(const ExperimentReport& report, std::ostream& out);
void WriteJson(const ExperimentReport& report, std::ostream& out);

}  // namespace igs
