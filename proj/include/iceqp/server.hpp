#pragma once

#include <httplib.h>

#include <functional>
#include <string>

#include "iceqp/session.hpp"

namespace iceqp {

/// HTTP front end of a SessionStore. Bodies are JSON; errors are
/// {code, message, detail}.
class Server {
 public:
  explicit Server(SessionStore& store) : store_(store) { routes(); }

  httplib::Server& http() { return http_; }

  /// Binds to host:port (0 picks a free port) and returns the port, or -1.
  int bind(const std::string& host, int port) {
    if (port == 0) return http_.bind_to_any_port(host);
    return http_.bind_to_port(host, port) ? port : -1;
  }
  bool listen() { return http_.listen_after_bind(); }
  void stop() { http_.stop(); }

 private:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  static void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void error(httplib::Response& res, int status, const std::string& code, const std::string& message,
                    json detail = nullptr) {
    send(res, status, {{"code", code}, {"message", message}, {"detail", detail}});
  }

  // Maps library errors to responses.
  static Handler guarded(Handler h) {
    return [h](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const NotFoundError& e) {
        error(res, 404, "not_found", e.what());
      } catch (const ParseError& e) {
        error(res, 400, "parse_error", e.what(), e.where().empty() ? json(nullptr) : json(e.where()));
      } catch (const ValidationError& e) {
        error(res, 422, "validation_failed", e.what());
      } catch (const PreconditionError& e) {
        error(res, 409, "precondition_violated", e.what());
      } catch (const std::exception& e) {
        error(res, 500, "internal", e.what());
      }
    };
  }

  static json body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    auto j = detail::parse_text(req.body);
    if (!j.is_object()) throw ParseError("request body must be an object", "/");
    return j;
  }

  void routes() {
    http_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    http_.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    http_.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto b = body(req);
                 if (!b.contains("iqp")) throw ParseError("missing field 'iqp'", "/");
                 auto qp = iqp_from_json(b["iqp"], "/iqp");
                 std::optional<int> n;
                 if (b.contains("truncate") && !b["truncate"].is_null())
                   n = detail::Reader::integer(b["truncate"], "/truncate");
                 auto s = store_.create(std::move(qp), n);
                 send(res, 201, {{"id", s->id()}, {"truncation", s->truncation()}});
               }));

    session_route("Get", R"(/sessions/([^/]+))", [](Session& s, const json&) { return s.state_json(); });
    session_route("Post", R"(/sessions/([^/]+)/mutate)", [](Session& s, const json& b) {
      if (!b.contains("vertex")) throw ParseError("missing field 'vertex'", "/");
      auto& step = s.mutate(detail::Reader::integer(b["vertex"], "/vertex"));
      auto st = s.state_json();
      st["report"] = step.report;
      return st;
    });
    session_route("Post", R"(/sessions/([^/]+)/undo)", [](Session& s, const json&) {
      s.undo();
      return s.state_json();
    });
    session_route("Post", R"(/sessions/([^/]+)/redo)", [](Session& s, const json&) {
      s.redo();
      return s.state_json();
    });
    session_route("Get", R"(/sessions/([^/]+)/analysis)", [](Session& s, const json&) { return s.analysis_json(); });

    http_.Get(R"(/sessions/([^/]+)/export)", guarded([this](const httplib::Request& req, httplib::Response& res) {
                auto s = store_.get(req.matches[1]);
                std::lock_guard lock(s->mutex());
                res.set_content(serialize_iqp(s->current().quiver, s->current().potential), "application/json");
              }));
  }

  void session_route(const std::string& method, const std::string& pattern,
                     std::function<json(Session&, const json&)> f) {
    auto h = guarded([this, f](const httplib::Request& req, httplib::Response& res) {
      auto s = store_.get(req.matches[1]);
      auto b = body(req);
      std::lock_guard lock(s->mutex());
      send(res, 200, f(*s, b));
    });
    if (method == "Get") http_.Get(pattern, h);
    else http_.Post(pattern, h);
  }

  SessionStore& store_;
  httplib::Server http_;
};

}  // namespace iceqp
