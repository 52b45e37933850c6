#include "igs/service.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "igs/penalty.h"

namespace igs {
namespace fs = std::filesystem;

struct SessionService::Session {
  std::mutex mu;
  std::string id;
  std::string hierarchy_id;
  std::string algo_name;
  std::shared_ptr<const Hierarchy> h;
  Algorithm algo = Algorithm::kKbmDp;
  int b = 0;
  int k = 1;
  std::string created_at;
  std::unique_ptr<QuestionSelector> selector;
  SessionState state;
  VertexId pending = kNoVertex;
  std::vector<Answer> answers;
  // responses[r] is the body returned after r answers.
  std::vector<nlohmann::json> responses;
};

namespace {

ServiceError BadRequest(const std::string& message) {
  return ServiceError(400, "bad_request", message);
}

std::string NowIso8601() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string HexId(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

nlohmann::json VertexPayload(const Hierarchy& h, VertexId v) {
  return {{"vertex", h.name(v)}, {"label", h.label(v)}, {"path", h.RootPathLabels(v)}};
}

template <typename T>
T Field(const nlohmann::json& body, const char* key) {
  if (!body.is_object() || !body.contains(key)) {
    throw BadRequest(std::string("missing field '") + key + "'");
  }
  try {
    return body.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw BadRequest(std::string("field '") + key + "' has the wrong type");
  }
}

Answer ParseAnswer(const std::string& text) {
  if (text == "yes" || text == "Yes" || text == "YES") return Answer::kYes;
  if (text == "no" || text == "No" || text == "NO") return Answer::kNo;
  throw BadRequest("answer must be \"yes\" or \"no\"");
}

std::string Token(const std::string& session_id, std::size_t round) {
  return session_id + ":" + std::to_string(round);
}

}  // namespace

SessionService::SessionService(ServiceOptions options) : options_(std::move(options)) {
  if (!options_.persist_dir.empty()) {
    fs::create_directories(fs::path(options_.persist_dir) / "hierarchies");
    fs::create_directories(fs::path(options_.persist_dir) / "sessions");
  }
}

SessionService::~SessionService() = default;

std::string SessionService::RegisterHierarchy(std::string_view body) {
  return RegisterHierarchyImpl(Hierarchy::Parse(body), body);
}

std::string SessionService::RegisterHierarchy(Hierarchy h) {
  std::ostringstream body;
  h.WriteEdgeList(body);
  return RegisterHierarchyImpl(std::move(h), body.str());
}

std::string SessionService::RegisterHierarchyImpl(Hierarchy h, std::string_view body) {
  const std::string id = HexId(h.ContentHash());
  std::unique_lock lock(mu_);
  if (hierarchies_.count(id)) return id;
  hierarchies_.emplace(id, std::make_shared<const Hierarchy>(std::move(h)));
  if (!options_.persist_dir.empty()) {
    std::ofstream out(fs::path(options_.persist_dir) / "hierarchies" / (id + ".txt"));
    out << body;
  }
  return id;
}

std::shared_ptr<const Hierarchy> SessionService::FindHierarchy(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = hierarchies_.find(id);
  if (it == hierarchies_.end()) {
    throw ServiceError(404, "not_found", "unknown hierarchy '" + id + "'");
  }
  return it->second;
}

std::shared_ptr<SessionService::Session> SessionService::FindSession(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "not_found", "unknown session '" + id + "'");
  return it->second;
}

const FirstRoundCache& SessionService::DpPlusCache(const std::string& hierarchy_id,
                                                   const Hierarchy& h, int k) {
  std::lock_guard lock(cache_mu_);
  auto& slot = caches_[{hierarchy_id, k}];
  if (!slot) slot = std::make_unique<FirstRoundCache>(PrecomputeFirstRound(h, k));
  return *slot;
}

std::shared_ptr<SessionService::Session> SessionService::StartSession(
    const std::string& id, const std::string& hierarchy_id, const std::string& algo_name, int b,
    int k) {
  auto h = FindHierarchy(hierarchy_id);
  const auto algo = ParseAlgorithm(algo_name, k);
  if (!algo) throw BadRequest("unknown algorithm '" + algo_name + "'");
  if (b < 1) throw ServiceError(422, "invalid_argument", "b must be >= 1");
  if (k < 1 || k > h->size()) {
    throw ServiceError(422, "invalid_argument",
                       "k must be in [1, " + std::to_string(h->size()) + "]");
  }
  auto s = std::make_shared<Session>();
  s->id = id;
  s->hierarchy_id = hierarchy_id;
  s->algo_name = algo_name;
  s->h = h;
  s->algo = *algo;
  s->b = b;
  s->k = ModeOf(*algo) == SearchMode::kSingle ? 1 : k;
  s->created_at = NowIso8601();
  const FirstRoundCache* cache =
      *algo == Algorithm::kKbmDpPlus ? &DpPlusCache(hierarchy_id, *h, s->k) : nullptr;
  s->selector = MakeSelector(*algo, *h, s->k, cache);
  s->state = InitSession(*h, ModeOf(*algo), b, s->k);
  if (!s->state.terminated) s->pending = s->selector->Next(s->state);
  s->responses.push_back(Describe(*s));
  return s;
}

nlohmann::json SessionService::CreateSession(const nlohmann::json& request) {
  const auto hierarchy_id = Field<std::string>(request, "hierarchy_id");
  const auto algo = request.contains("algo") ? Field<std::string>(request, "algo") : "kbm-dp";
  const int b = Field<int>(request, "b");
  const int k = request.contains("k") ? Field<int>(request, "k") : 1;
  std::string id;
  {
    std::unique_lock lock(mu_);
    id = "s" + std::to_string(next_session_++);
  }
  auto s = StartSession(id, hierarchy_id, algo, b, k);
  std::lock_guard session_lock(s->mu);
  {
    std::unique_lock lock(mu_);
    sessions_.emplace(id, s);
  }
  Persist(id, {{"type", "create"},
               {"session_id", id},
               {"hierarchy_id", hierarchy_id},
               {"algo", algo},
               {"b", b},
               {"k", k}});
  return s->responses.front();
}

nlohmann::json SessionService::Describe(const Session& s) const {
  const Hierarchy& h = *s.h;
  nlohmann::json out;
  out["session_id"] = s.id;
  out["budget_remaining"] = s.state.budget_remaining;
  out["terminated"] = s.state.terminated;
  if (!s.state.terminated) {
    out["token"] = Token(s.id, s.answers.size());
    out["question"] = VertexPayload(h, s.pending);
    return out;
  }
  out["question"] = nullptr;
  const std::vector<VertexId> sel = FinalizeSelection(s.state, h);
  out["selections"] = nlohmann::json::array();
  for (VertexId v : sel) out["selections"].push_back(VertexPayload(h, v));
  out["penalty_vs_potential"] = SetPenaltyMasked(h, sel, s.state.in_p);
  return out;
}

nlohmann::json SessionService::Advance(Session& s, Answer answer) {
  ApplyAnswer(s.state, *s.h, s.pending, answer);
  s.answers.push_back(answer);
  s.pending = s.state.terminated ? kNoVertex : s.selector->Next(s.state);
  s.responses.push_back(Describe(s));
  return s.responses.back();
}

nlohmann::json SessionService::SubmitAnswer(const std::string& session_id,
                                            const nlohmann::json& request) {
  auto s = FindSession(session_id);
  const Answer answer = ParseAnswer(Field<std::string>(request, "answer"));
  std::lock_guard lock(s->mu);
  std::size_t round = s->answers.size();
  if (request.contains("token")) {
    const auto token = Field<std::string>(request, "token");
    const auto colon = token.rfind(':');
    if (colon == std::string::npos || token.substr(0, colon) != session_id) {
      throw ServiceError(409, "stale_token", "token does not belong to this session");
    }
    try {
      std::size_t used = 0;
      round = std::stoul(token.substr(colon + 1), &used);
      if (used != token.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw BadRequest("malformed token '" + token + "'");
    }
  }
  if (round < s->answers.size()) {
    if (s->answers[round] == answer) return s->responses[round + 1];
    throw ServiceError(409, "stale_token",
                       "round " + std::to_string(round) + " was already answered differently");
  }
  if (round > s->answers.size()) {
    throw ServiceError(409, "stale_token", "token refers to a question not asked yet");
  }
  if (s->state.terminated) {
    throw ServiceError(409, "no_pending_question", "session has terminated");
  }
  nlohmann::json response = Advance(*s, answer);
  Persist(session_id, {{"type", "answer"},
                       {"round", round},
                       {"answer", answer == Answer::kYes ? "yes" : "no"}});
  return response;
}

nlohmann::json SessionService::GetSession(const std::string& session_id) const {
  auto s = FindSession(session_id);
  std::lock_guard lock(s->mu);
  const Hierarchy& h = *s->h;
  nlohmann::json out = s->responses.back();
  out["hierarchy_id"] = s->hierarchy_id;
  out["algo"] = s->algo_name;
  out["k"] = s->k;
  out["b"] = s->b;
  out["created_at"] = s->created_at;
  out["p_size"] = s->state.p_count;
  out["y_labels"] = nlohmann::json::array();
  for (VertexId v : s->state.YesCandidates()) out["y_labels"].push_back(h.label(v));
  out["history"] = nlohmann::json::array();
  for (std::size_t i = 0; i < s->state.log.size(); ++i) {
    const QuestionRecord& r = s->state.log[i];
    out["history"].push_back({{"round", i},
                              {"vertex", h.name(r.question)},
                              {"label", h.label(r.question)},
                              {"answer", r.answer == Answer::kYes ? "yes" : "no"},
                              {"p_size", r.p_size_after},
                              {"y_size", r.y_size_after}});
  }
  const std::vector<VertexId> best = FinalizeSelection(s->state, h);
  out["current_selection"] = nlohmann::json::array();
  for (VertexId v : best) out["current_selection"].push_back(VertexPayload(h, v));
  out["current_penalty_vs_potential"] = SetPenaltyMasked(h, best, s->state.in_p);
  return out;
}

void SessionService::Persist(const std::string& session_id, const nlohmann::json& line) const {
  if (options_.persist_dir.empty()) return;
  std::ofstream out(fs::path(options_.persist_dir) / "sessions" / (session_id + ".jsonl"),
                    std::ios::app);
  out << line.dump() << '\n';
}

int SessionService::LoadPersisted() {
  if (options_.persist_dir.empty()) return 0;
  const fs::path root(options_.persist_dir);
  for (const auto& entry : fs::directory_iterator(root / "hierarchies")) {
    std::ifstream in(entry.path());
    std::stringstream body;
    body << in.rdbuf();
    const Hierarchy h = Hierarchy::Parse(body.str());
    std::unique_lock lock(mu_);
    hierarchies_.emplace(HexId(h.ContentHash()), std::make_shared<const Hierarchy>(h));
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root / "sessions")) {
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int restored = 0;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    std::string line;
    std::shared_ptr<Session> s;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto rec = nlohmann::json::parse(line);
      if (rec.at("type") == "create") {
        s = StartSession(rec.at("session_id"), rec.at("hierarchy_id"), rec.at("algo"),
                         rec.at("b"), rec.at("k"));
      } else if (s && rec.at("type") == "answer" && !s->state.terminated) {
        Advance(*s, ParseAnswer(rec.at("answer")));
      }
    }
    if (!s) continue;
    std::unique_lock lock(mu_);
    sessions_[s->id] = s;
    const std::uint64_t num = std::stoull(s->id.substr(1));
    next_session_ = std::max(next_session_, num + 1);
    ++restored;
  }
  return restored;
}

}  // namespace igs
