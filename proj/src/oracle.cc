#include "igs/oracle.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "json.hpp"

namespace igs {

TargetSet::TargetSet(const Hierarchy& h, std::vector<VertexId> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw TargetError("target set must not be empty");
  for (VertexId t : members_) {
    if (t < 0 || t >= h.size()) throw TargetError("target id out of range");
  }
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw TargetError("duplicate target");
  }
  if (!ValidateIndependence(h, members_)) {
    throw TargetError("targets are not independent (one reaches another)");
  }
}

bool ValidateIndependence(const Hierarchy& h, std::span<const VertexId> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i != j && h.IsAncestor(members[i], members[j])) return false;
    }
  }
  return true;
}

Answer TruthfulAnswer(const Hierarchy& h, const TargetSet& targets, VertexId q) {
  for (VertexId t : targets.members()) {
    if (h.IsAncestor(q, t)) return Answer::kYes;
  }
  return Answer::kNo;
}

void NoisyOracleConfig::Validate() const {
  if (!(difficult_fraction >= 0.0 && difficult_fraction <= 1.0)) {
    throw std::invalid_argument("difficult_fraction must be in [0,1]");
  }
  if (!(wrong_probability >= 0.0 && wrong_probability <= 1.0)) {
    throw std::invalid_argument("wrong_probability must be in [0,1]");
  }
}

Answer NoisyAnswer(const Hierarchy& h, const TargetSet& targets, VertexId q,
                   const NoisyOracleConfig& config, bool is_difficult,
                   std::mt19937_64& rng) {
  const Answer truth = TruthfulAnswer(h, targets, q);
  if (!is_difficult) return truth;
  std::bernoulli_distribution flip(config.wrong_probability);
  if (!flip(rng)) return truth;
  return truth == Answer::kYes ? Answer::kNo : Answer::kYes;
}

std::vector<bool> SampleDifficulty(int objects, const NoisyOracleConfig& config) {
  config.Validate();
  std::vector<int> order(objects);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.rng_seed ^ 0x9e3779b97f4a7c15ULL);
  std::shuffle(order.begin(), order.end(), rng);
  const int difficult =
      static_cast<int>(std::lround(config.difficult_fraction * objects));
  std::vector<bool> flags(objects, false);
  for (int i = 0; i < difficult; ++i) flags[order[i]] = true;
  return flags;
}

SimulatedOracle::SimulatedOracle(const Hierarchy& h, TargetSet targets,
                                 NoisyOracleConfig config, bool is_difficult,
                                 std::uint64_t stream)
    : h_(&h),
      targets_(std::move(targets)),
      config_(config),
      noisy_(true),
      is_difficult_(is_difficult),
      rng_(config.rng_seed * 0x100000001b3ULL + stream) {
  config_.Validate();
}

Answer SimulatedOracle::Ask(VertexId q) {
  if (!noisy_) return TruthfulAnswer(*h_, targets_, q);
  const Answer answer = NoisyAnswer(*h_, targets_, q, config_, is_difficult_, rng_);
  if (answer != TruthfulAnswer(*h_, targets_, q)) ++flips_;
  return answer;
}

std::vector<TargetSet> LoadTargets(const Hierarchy& h, std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw TargetError(std::string("invalid targets JSON: ") + e.what());
  }
  if (!doc.is_array()) throw TargetError("targets file must be a JSON array");
  std::vector<TargetSet> objects;
  objects.reserve(doc.size());
  for (const auto& object : doc) {
    if (!object.is_array()) throw TargetError("each query object must be an array");
    std::vector<VertexId> members;
    for (const auto& key : object) {
      if (!key.is_string()) throw TargetError("target keys must be strings");
      const auto v = h.Find(key.get<std::string>());
      if (!v) throw TargetError("unknown target vertex '" + key.get<std::string>() + "'");
      members.push_back(*v);
    }
    objects.emplace_back(h, std::move(members));
  }
  return objects;
}

std::vector<TargetSet> LoadTargetsFile(const Hierarchy& h, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TargetError("cannot open targets file '" + path + "'");
  return LoadTargets(h, in);
}

void WriteTargets(const Hierarchy& h, std::span<const TargetSet> objects,
                  std::ostream& out) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& object : objects) {
    nlohmann::json row = nlohmann::json::array();
    for (VertexId t : object.members()) row.push_back(h.name(t));
    doc.push_back(std::move(row));
  }
  out << doc.dump() << '\n';
}

}  // namespace igs
