#include "httplib.h"
#include "igs/service.h"

namespace igs {
namespace {

void Reply(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    Reply(res, e.status(), e.ToJson());
  } catch (const nlohmann::json::exception& e) {
    Reply(res, 400, {{"code", "bad_request"}, {"message", e.what()}});
  } catch (const HierarchyError& e) {
    Reply(res, 400, {{"code", "invalid_hierarchy"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    Reply(res, 500, {{"code", "internal"}, {"message", e.what()}});
  }
}

}  // namespace

void MountRoutes(httplib::Server& server, SessionService& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.Post("/hierarchies", [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 201, {{"hierarchy_id", service.RegisterHierarchy(req.body)}}); });
  });
  server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 201, service.CreateSession(nlohmann::json::parse(req.body))); });
  });
  server.Post(R"(/sessions/([^/]+)/answer)",
              [&](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] {
                  Reply(res, 200,
                        service.SubmitAnswer(req.matches[1], nlohmann::json::parse(req.body)));
                });
              });
  server.Get(R"(/sessions/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, service.GetSession(req.matches[1])); });
  });
}

}  // namespace igs
