#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "igs/hierarchy.h"

namespace igs {

enum class Answer { kNo, kYes };

inline const char* AnswerName(Answer a) { return a == Answer::kYes ? "Yes" : "No"; }

class TargetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Hidden ground truth. Members are pairwise non-reachable.
class TargetSet {
 public:
  // Throws TargetError if empty, out of range, duplicated, or ancestor-related.
  TargetSet(const Hierarchy& h, std::vector<VertexId> members);

  std::span<const VertexId> members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }

 private:
  std::vector<VertexId> members_;
};

// True iff no two distinct members are ancestor-related.
bool ValidateIndependence(const Hierarchy& h, std::span<const VertexId> members);

// reach(q): does the subtree of q contain a target?
Answer TruthfulAnswer(const Hierarchy& h, const TargetSet& targets, VertexId q);

struct NoisyOracleConfig {
  double difficult_fraction = 0.0;
  double wrong_probability = 0.0;
  std::uint64_t rng_seed = 0;

  void Validate() const;
};

// Truthful answer, flipped with probability wrong_probability for difficult
// objects. The generator advances once per difficult question.
Answer NoisyAnswer(const Hierarchy& h, const TargetSet& targets, VertexId q,
                   const NoisyOracleConfig& config, bool is_difficult,
                   std::mt19937_64& rng);

// Samples the per-object difficulty flags for a suite of `objects` query
// objects: exactly round(difficult_fraction * objects) of them, chosen
// uniformly, flagged difficult.
std::vector<bool> SampleDifficulty(int objects, const NoisyOracleConfig& config);

// Answer source for one query object. Simulated sources answer immediately;
// human channels are driven by the session driver (CLI prompt or service).
class SimulatedOracle {
 public:
  SimulatedOracle(const Hierarchy& h, TargetSet targets)
      : h_(&h), targets_(std::move(targets)) {}
  SimulatedOracle(const Hierarchy& h, TargetSet targets, NoisyOracleConfig config,
                  bool is_difficult, std::uint64_t stream);

  Answer Ask(VertexId q);
  const TargetSet& targets() const { return targets_; }
  int flips() const { return flips_; }

 private:
  const Hierarchy* h_;
  TargetSet targets_;
  NoisyOracleConfig config_{};
  bool noisy_ = false;
  bool is_difficult_ = false;
  std::mt19937_64 rng_{0};
  int flips_ = 0;
};

// Target files: a JSON array of arrays of vertex keys, one inner array per
// query object.
std::vector<TargetSet> LoadTargets(const Hierarchy& h, std::istream& in);
std::vector<TargetSet> LoadTargetsFile(const Hierarchy& h, const std::string& path);
void WriteTargets(const Hierarchy& h, std::span<const TargetSet> objects,
                  std::ostream& out);

}  // namespace igs
