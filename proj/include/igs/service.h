#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "igs/dp_plus.h"
#include "igs/engine.h"
#include "igs/hierarchy.h"
#include "igs/session.h"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace igs {

class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  nlohmann::json ToJson() const { return {{"code", code_}, {"message", what()}}; }

 private:
  int status_;
  std::string code_;
};

struct ServiceOptions {
  // When set, every hierarchy upload and answer is appended here and replayed
  // by LoadPersisted().
  std::string persist_dir;
};

// Session store behind the HTTP API. All methods are thread-safe; each
// session's mutations are serialized by its own mutex.
//
// Answer tokens have the form "<session_id>:<round>". Resubmitting a spent
// token with the same answer replays the recorded response; with a different
// answer it is a conflict.
class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});
  ~SessionService();

  // Returns the hierarchy id (content hash). Re-uploading is idempotent.
  std::string RegisterHierarchy(std::string_view body);
  std::string RegisterHierarchy(Hierarchy h);

  // {hierarchy_id, algo, b, k}
  nlohmann::json CreateSession(const nlohmann::json& request);
  // {answer: "yes"|"no", token}
  nlohmann::json SubmitAnswer(const std::string& session_id, const nlohmann::json& request);
  nlohmann::json GetSession(const std::string& session_id) const;

  // Rebuilds hierarchies and sessions from persist_dir. Returns the number of
  // sessions restored.
  int LoadPersisted();

 private:
  struct Session;

  std::shared_ptr<const Hierarchy> FindHierarchy(const std::string& id) const;
  std::shared_ptr<Session> FindSession(const std::string& id) const;
  const FirstRoundCache& DpPlusCache(const std::string& hierarchy_id, const Hierarchy& h, int k);
  std::shared_ptr<Session> StartSession(const std::string& id, const std::string& hierarchy_id,
                                        const std::string& algo_name, int b, int k);
  nlohmann::json Advance(Session& s, Answer answer);
  nlohmann::json Describe(const Session& s) const;
  void Persist(const std::string& session_id, const nlohmann::json& line) const;
  std::string RegisterHierarchyImpl(Hierarchy h, std::string_view body);

  ServiceOptions options_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<const Hierarchy>> hierarchies_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_session_ = 1;
  std::mutex cache_mu_;
  std::map<std::pair<std::string, int>, std::unique_ptr<FirstRoundCache>> caches_;
};

// POST /hierarchies, POST /sessions, POST /sessions/{id}/answer,
// GET /sessions/{id}. Errors are JSON {code, message}.
void MountRoutes(httplib::Server& server, SessionService& service);

}  // namespace igs
