#pragma once

#include <memory>
#include <string>

#include "viewadapt/service/session.hpp"

namespace httplib {
class Server;
}

namespace viewadapt::service {

// HTTP front end for a SessionManager.
//
//   POST   /sessions                    create (config or replay body) -> 201
//   GET    /sessions                    list session ids
//   DELETE /sessions/{id}
//   GET    /sessions/{id}/params        current config
//   PATCH  /sessions/{id}/params        queue a patch -> {"acknowledged_tick"}
//   POST   /sessions/{id}/step          {"n": k} -> FrameState after k ticks
//   POST   /sessions/{id}/pause|resume  -> {"run_state"}
//   GET    /sessions/{id}/frame         latest FrameState
//   GET    /sessions/{id}/replay        config + seed + applied patches
//   GET    /sessions/{id}/stream        text/event-stream of FrameStates,
//                                       ?after=<tick> to resume
//   GET    /health
//
// Errors are {"error": {"code", "message", "fields"}} with codes
// unknown_session, validation_error and bad_request.
class Server {
 public:
  explicit Server(std::shared_ptr<SessionManager> sessions);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to |port| (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks serving requests until stop().
  bool listen_after_bind();
  void stop();
  bool running() const;

  SessionManager& sessions() { return *sessions_; }

 private:
  void install_routes();

  std::shared_ptr<SessionManager> sessions_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace viewadapt::service
