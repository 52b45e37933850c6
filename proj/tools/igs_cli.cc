#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "igs/engine.h"
#include "igs/experiment.h"
#include "igs/fixtures.h"
#include "igs/penalty.h"
#include "igs/service.h"

namespace {

using namespace igs;

constexpr const char* kBuiltinReference = "builtin:reference";

Hierarchy LoadHierarchy(const std::string& path) {
  if (path == kBuiltinReference) return ReferenceHierarchy();
  return Hierarchy::LoadFile(path);
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void WithOutput(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  fn(out);
}

std::string Join(const Hierarchy& h, const std::vector<VertexId>& vs) {
  std::string s;
  for (VertexId v : vs) s += (s.empty() ? "" : ", ") + h.label(v);
  return s;
}

std::string PathText(const Hierarchy& h, VertexId v) {
  std::string s;
  for (const auto& label : h.RootPathLabels(v)) s += (s.empty() ? "" : " > ") + label;
  return s;
}

Algorithm ResolveAlgorithm(const std::string& name, int k) {
  const auto algo = ParseAlgorithm(name, k);
  if (!algo) throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
  return *algo;
}

struct NoiseFlags {
  double frac = 0.0;
  double p = 0.0;
  std::optional<NoisyOracleConfig> Config(std::uint64_t seed) const {
    if (frac <= 0.0 || p <= 0.0) return std::nullopt;
    NoisyOracleConfig cfg{frac, p, seed};
    cfg.Validate();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-limited interactive search for k targets in a hierarchy"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate synthetic hierarchies and target files");
  gen->require_subcommand(1);
  int gen_n = 1000;
  int gen_degree = 8;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen_tree = gen->add_subcommand("tree", "Random bounded-degree tree (edge list)");
  gen_tree->add_option("--n", gen_n, "Number of vertices")->check(CLI::PositiveNumber);
  gen_tree->add_option("--max-degree", gen_degree, "Maximum out-degree");
  gen_tree->add_option("--seed", gen_seed);
  gen_tree->add_option("--out", gen_out, "Output path (default stdout)");
  std::string gt_hierarchy;
  int gt_objects = 200;
  int gt_min = 1;
  int gt_max = 1;
  auto* gen_targets = gen->add_subcommand("targets", "Independent target sets (JSON)");
  gen_targets->add_option("--hierarchy", gt_hierarchy)->required();
  gen_targets->add_option("--objects", gt_objects)->check(CLI::PositiveNumber);
  gen_targets->add_option("--min", gt_min, "Smallest target-set size");
  gen_targets->add_option("--max", gt_max, "Largest target-set size");
  gen_targets->add_option("--seed", gen_seed);
  gen_targets->add_option("--out", gen_out);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run one simulated session with a verbose log");
  std::string hierarchy_path;
  std::string targets_path;
  std::string algo_name = "kbm-dp-plus";
  int budget = 50;
  int k = 3;
  int object = 0;
  std::uint64_t seed = 1;
  NoiseFlags noise;
  std::string out_path;
  std::string log_path;
  sim->add_option("--hierarchy", hierarchy_path, "Edge list, JSON, or builtin:reference")
      ->required();
  sim->add_option("--targets", targets_path, "Targets JSON file")->required();
  sim->add_option("--object", object, "Query object index in the targets file");
  sim->add_option("--algo", algo_name);
  sim->add_option("--budget", budget)->check(CLI::PositiveNumber);
  sim->add_option("--k", k)->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed);
  sim->add_option("--noise-frac", noise.frac, "Difficult-object fraction")->check(CLI::Range(0.0, 1.0));
  sim->add_option("--noise-p", noise.p, "Wrong-answer probability")->check(CLI::Range(0.0, 1.0));
  sim->add_option("--log", log_path, "Session log (JSON lines)");

  // interactive
  auto* inter = app.add_subcommand("interactive", "Answer the questions yourself");
  inter->add_option("--hierarchy", hierarchy_path)->required();
  inter->add_option("--algo", algo_name);
  inter->add_option("--budget", budget)->check(CLI::PositiveNumber);
  inter->add_option("--k", k)->check(CLI::PositiveNumber);
  inter->add_option("--log", log_path);

  // bench
  auto* bench = app.add_subcommand("bench", "Sweep algorithms, budgets and k");
  std::vector<std::string> algos{"stbis", "bing-single", "kbm-dp-plus", "kbm-topk", "bing-multi"};
  std::vector<int> budgets{5, 10, 20, 50};
  std::vector<int> ks{3};
  std::string format = "csv";
  bool no_timing = false;
  std::string dp_plus_cache;
  bench->add_option("--hierarchy", hierarchy_path)->required();
  bench->add_option("--targets", targets_path)->required();
  bench->add_option("--algo", algos)->delimiter(',');
  bench->add_option("--budget", budgets)->delimiter(',');
  bench->add_option("--k", ks)->delimiter(',');
  bench->add_option("--seed", seed);
  bench->add_option("--noise-frac", noise.frac)->check(CLI::Range(0.0, 1.0));
  bench->add_option("--noise-p", noise.p)->check(CLI::Range(0.0, 1.0));
  bench->add_option("--out", out_path);
  bench->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  bench->add_flag("--no-timing", no_timing, "Write zeros in the timing columns");
  bench->add_option("--dp-plus-cache", dp_plus_cache, "Sidecar path prefix for first-round gains");

  // verify-fixtures
  auto* verify = app.add_subcommand("verify-fixtures", "Recompute the reference gain tables");
  std::optional<double> prior;
  bool verbose = false;
  verify->add_option("--pr", prior, "Override the initial probability (negative control)");
  verify->add_flag("--verbose", verbose, "Print matching cells too");

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP session API");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string persist_dir;
  std::vector<std::string> preload;
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--persist-dir", persist_dir, "Append-only session logs; replayed at start");
  serve->add_option("--hierarchy", preload, "Hierarchies to register at start");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_tree->parsed()) {
      const Hierarchy h = GenRandomTree(gen_n, gen_degree, gen_seed);
      WithOutput(gen_out, [&](std::ostream& out) { h.WriteEdgeList(out); });
      std::cerr << "n=" << h.size() << " height=" << h.height()
                << " max_out_degree=" << h.max_out_degree() << '\n';
    } else if (gen_targets->parsed()) {
      const Hierarchy h = LoadHierarchy(gt_hierarchy);
      const auto suite = SampleTargetSuite(h, gt_objects, gt_min, gt_max, gen_seed);
      WithOutput(gen_out, [&](std::ostream& out) { WriteTargets(h, suite, out); });
    } else if (sim->parsed()) {
      const Hierarchy h = LoadHierarchy(hierarchy_path);
      const auto objects = LoadTargetsFile(h, targets_path);
      if (object < 0 || object >= static_cast<int>(objects.size())) {
        throw CLI::ValidationError("--object", "index out of range");
      }
      const Algorithm algo = ResolveAlgorithm(algo_name, k);
      const int eff_k = ModeOf(algo) == SearchMode::kSingle ? 1 : k;
      auto selector = MakeSelector(algo, h, eff_k);
      const auto cfg = noise.Config(seed);
      bool difficult = false;
      if (cfg) difficult = SampleDifficulty(static_cast<int>(objects.size()), *cfg)[object];
      SimulatedOracle oracle =
          cfg ? SimulatedOracle(h, objects[object], *cfg, difficult, object)
              : SimulatedOracle(h, objects[object]);
      std::ofstream log;
      if (!log_path.empty()) log.open(log_path);
      const auto result = RunSession(
          h, *selector, ModeOf(algo), budget, eff_k, [&](VertexId q) { return oracle.Ask(q); },
          [&](const SessionState& s) {
            const QuestionRecord& r = s.log.back();
            const Penalty g = s.p_count ? CurrentPotentialPenalty(s, h) : 0;
            std::printf("%3zu  %-4s %s  |P|=%d |Y|=%d g=%lld\n", s.log.size(),
                        AnswerName(r.answer), PathText(h, r.question).c_str(), r.p_size_after,
                        r.y_size_after, static_cast<long long>(g));
            if (log) WriteSessionLogLine(log, h, r, g);
          });
      std::printf("targets:   %s\n",
                  Join(h, {objects[object].members().begin(), objects[object].members().end()})
                      .c_str());
      std::printf("selection: %s\n", Join(h, result.selection).c_str());
      std::printf("penalty:   %lld  (questions %zu, noisy flips %d)\n",
                  static_cast<long long>(SetPenalty(h, result.selection, objects[object].members())),
                  result.state.log.size(), oracle.flips());
    } else if (inter->parsed()) {
      const Hierarchy h = LoadHierarchy(hierarchy_path);
      const Algorithm algo = ResolveAlgorithm(algo_name, k);
      const int eff_k = ModeOf(algo) == SearchMode::kSingle ? 1 : k;
      auto selector = MakeSelector(algo, h, eff_k);
      std::ofstream log;
      if (!log_path.empty()) log.open(log_path);
      const auto result = RunSession(
          h, *selector, ModeOf(algo), budget, eff_k,
          [&](VertexId q) {
            while (true) {
              std::cout << "Does your object belong under: " << PathText(h, q) << " ? [y/n] "
                        << std::flush;
              std::string line;
              if (!std::getline(std::cin, line)) throw std::runtime_error("input closed");
              if (line == "y" || line == "yes" || line == "Y") return Answer::kYes;
              if (line == "n" || line == "no" || line == "N") return Answer::kNo;
            }
          },
          [&](const SessionState& s) {
            if (log) WriteSessionLogLine(log, h, s.log.back(), CurrentPotentialPenalty(s, h));
          });
      std::cout << "Selections:\n";
      for (VertexId v : result.selection) std::cout << "  " << PathText(h, v) << '\n';
    } else if (bench->parsed()) {
      const Hierarchy h = LoadHierarchy(hierarchy_path);
      const auto objects = LoadTargetsFile(h, targets_path);
      ExperimentConfig cfg;
      cfg.algorithms = algos;
      cfg.budgets = budgets;
      cfg.ks = ks;
      cfg.noise = noise.Config(seed);
      cfg.seed = seed;
      cfg.record_timing = !no_timing;
      cfg.dp_plus_cache_path = dp_plus_cache;
      const ExperimentReport report = RunExperiment(h, objects, cfg);
      WithOutput(out_path, [&](std::ostream& out) {
        if (format == "json") {
          WriteJson(report, out);
        } else {
          WriteCsv(report, out);
        }
      });
      for (const auto& s : report.Summaries()) {
        std::fprintf(stderr, "%-12s b=%-3d k=%d  mean_penalty=%.3f  questions=%.2f  per_q_us=%.1f\n",
                     s.algorithm.c_str(), s.b, s.k, s.mean_penalty, s.mean_questions,
                     s.mean_per_question_us);
      }
    } else if (verify->parsed()) {
      const FixtureReport report = VerifyFixtures(prior);
      PrintFixtureReport(report, std::cout, verbose);
      return report.ok ? 0 : 1;
    } else if (serve->parsed()) {
      SessionService service(ServiceOptions{persist_dir});
      service.RegisterHierarchy(ReferenceHierarchy());
      for (const auto& path : preload) {
        std::cerr << "hierarchy " << path << " -> "
                  << service.RegisterHierarchy(LoadHierarchy(path)) << '\n';
      }
      const int restored = service.LoadPersisted();
      if (restored) std::cerr << "restored " << restored << " sessions\n";
      httplib::Server server;
      MountRoutes(server, service);
      std::cerr << "listening on " << host << ':' << port << '\n';
      if (!server.listen(host, port)) {
        std::cerr << "cannot bind " << host << ':' << port << '\n';
        return 1;
      }
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
