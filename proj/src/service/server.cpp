#include "viewadapt/service/server.hpp"

#include <httplib.h>

#include "viewadapt/errors.hpp"
#include "viewadapt/service/wire.hpp"

namespace viewadapt::service {

namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message, const std::vector<std::string>& fields = {}) {
  send_json(res, status, {{"error", {{"code", code}, {"message", message}, {"fields", fields}}}});
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    send_error(res, 400, "bad_request", std::string("malformed JSON: ") + e.what());
    return std::nullopt;
  }
}

std::string frame_event(const FrameState& f) {
  return "id: " + std::to_string(f.tick) + "\nevent: frame\ndata: " + to_json(f).dump() + "\n\n";
}

}  // namespace

Server::Server(std::shared_ptr<SessionManager> sessions)
    : sessions_(std::move(sessions)), http_(std::make_unique<httplib::Server>()) {
  install_routes();
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return http_->bind_to_any_port(host);
  return http_->bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return http_->listen_after_bind(); }

void Server::stop() {
  if (http_) http_->stop();
}

bool Server::running() const { return http_->is_running(); }

void Server::install_routes() {
  auto& http = *http_;
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Headers", "Content-Type"},
                            {"Access-Control-Allow-Methods", "GET, POST, PATCH, DELETE, OPTIONS"}});
  http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  // Looks the session up or writes a 404; handlers run only with a session.
  auto with_session = [this](auto handler) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      auto session = sessions_->find(req.matches[1]);
      if (!session) {
        send_error(res, 404, "unknown_session", "no session " + std::string(req.matches[1]));
        return;
      }
      try {
        handler(*session, req, res);
      } catch (const ValidationError& e) {
        send_error(res, 422, "validation_error", e.what(), e.fields());
      } catch (const InvalidArgument& e) {
        send_error(res, 400, "bad_request", e.what());
      }
    };
  };

  http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}});
  });

  http.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    auto body = parse_body(req, res);
    if (!body) return;
    try {
      auto session = sessions_->create(*body);
      send_json(res, 201, {{"session_id", session->id()}, {"tick", session->frame()->tick}});
    } catch (const ValidationError& e) {
      send_error(res, 422, "validation_error", e.what(), e.fields());
    } catch (const InvalidArgument& e) {
      send_error(res, 400, "bad_request", e.what());
    }
  });

  http.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"sessions", sessions_->ids()}});
  });

  http.Delete(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    if (!sessions_->remove(req.matches[1])) {
      send_error(res, 404, "unknown_session", "no session " + std::string(req.matches[1]));
      return;
    }
    send_json(res, 200, {{"deleted", std::string(req.matches[1])}});
  });

  http.Get(R"(/sessions/([^/]+)/params)",
           with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
             send_json(res, 200, to_json(s.config()));
           }));

  http.Patch(R"(/sessions/([^/]+)/params)",
             with_session([](Session& s, const httplib::Request& req, httplib::Response& res) {
               auto body = parse_body(req, res);
               if (!body) return;
               const auto tick = s.queue_patch(*body);
               send_json(res, 200, {{"acknowledged_tick", tick}});
             }));

  http.Post(R"(/sessions/([^/]+)/step)",
            with_session([](Session& s, const httplib::Request& req, httplib::Response& res) {
              auto body = parse_body(req, res);
              if (!body) return;
              int n = 1;
              if (body->contains("n")) {
                try {
                  n = body->at("n").get<int>();
                } catch (const json::exception&) {
                  throw ValidationError({"n"});
                }
                if (n < 0 || n > 100'000) throw ValidationError({"n"});
              }
              send_json(res, 200, to_json(*s.step(n)));
            }));

  http.Post(R"(/sessions/([^/]+)/pause)",
            with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
              s.pause();
              send_json(res, 200, {{"run_state", "paused"}});
            }));

  http.Post(R"(/sessions/([^/]+)/resume)",
            with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
              s.resume();
              send_json(res, 200, {{"run_state", "running"}});
            }));

  http.Get(R"(/sessions/([^/]+)/frame)",
           with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
             send_json(res, 200, to_json(*s.frame()));
           }));

  http.Get(R"(/sessions/([^/]+)/replay)",
           with_session([](Session& s, const httplib::Request&, httplib::Response& res) {
             send_json(res, 200, s.replay());
           }));

  http.Get(R"(/sessions/([^/]+)/stream)",
           with_session([this](Session& s, const httplib::Request& req, httplib::Response& res) {
             // Without ?after the stream opens with the current frame.
             std::optional<std::uint64_t> after;
             if (req.has_param("after")) {
               try {
                 after = std::stoull(req.get_param_value("after"));
               } catch (const std::exception&) {
                 throw ValidationError({"after"});
               }
             }
             std::weak_ptr<Session> weak = sessions_->find(s.id());
             res.set_header("Cache-Control", "no-cache");
             res.set_chunked_content_provider(
                 "text/event-stream",
                 [weak, after](std::size_t, httplib::DataSink& sink) mutable {
                   auto session = weak.lock();
                   if (!session) {
                     sink.done();
                     return true;
                   }
                   if (!after) {
                     const auto f = session->frame();
                     const auto ev = frame_event(*f);
                     if (!sink.write(ev.data(), ev.size())) return false;
                     after = f->tick;
                   }
                   for (const auto& f :
                        session->wait_frames(*after, std::chrono::milliseconds(250))) {
                     const auto ev = frame_event(*f);
                     if (!sink.write(ev.data(), ev.size())) return false;
                     after = f->tick;
                   }
                   return sink.is_writable();
                 });
           }));
}

}  // namespace viewadapt::service
