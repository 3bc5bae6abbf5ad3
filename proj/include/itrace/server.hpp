#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <string>
#include <utility>

#include <httplib.h>

#include "itrace/harness.hpp"

namespace itrace {

// Exposes the engine protocol over local HTTP:
//   POST /command   one command object -> {ok, log, snapshot} or {ok:false, error}
//   GET  /snapshot  current state snapshot
//   GET  /scene     static elements and link curves
//   GET  /log       NDJSON interaction log
//   GET  /metrics   session metrics
// Commands run one at a time on the shared engine.
class EngineServer {
 public:
  explicit EngineServer(Dataset dataset, EngineConfig config = {})
      : engine_(std::move(dataset), config), started_(std::chrono::steady_clock::now()) {
    server_.Post("/command", [this](const httplib::Request& req, httplib::Response& res) { on_command(req, res); });
    server_.Get("/snapshot", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      res.set_content(engine_.snapshot().dump(), "application/json");
    });
    server_.Get("/scene", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      res.set_content(scene_json(engine_.scene()).dump(), "application/json");
    });
    server_.Get("/log", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      res.set_content(log_text(engine_.log()), "application/x-ndjson");
    });
    server_.Get("/metrics", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      res.set_content(metrics_json(compute_metrics(engine_.log())).dump(), "application/json");
    });
  }

  // Binds to an OS-chosen port and returns it; call listen() afterwards.
  int bind_any_port(const std::string& host = "127.0.0.1") { return server_.bind_to_any_port(host); }
  bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  bool listen() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() { server_.wait_until_ready(); }

 private:
  void on_command(const httplib::Request& req, httplib::Response& res) {
    Json reply = Json::object();
    try {
      const Json cmd = Json::parse(req.body);
      std::lock_guard lock(mutex_);
      const auto elapsed =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started_).count();
      const std::int64_t now = std::max<std::int64_t>(elapsed, engine_.log().empty() ? 0 : engine_.log().back().timestamp_ms);
      Json records = Json::array();
      for (const auto& r : engine_.apply(cmd, now)) records.push_back(Json::parse(log_line(r)));
      reply["ok"] = true;
      reply["log"] = std::move(records);
      reply["snapshot"] = engine_.snapshot();
    } catch (const std::exception& ex) {
      reply = {{"ok", false}, {"error", ex.what()}};
      res.status = 400;
    }
    res.set_content(reply.dump(), "application/json");
  }

  Engine engine_;
  std::mutex mutex_;
  std::chrono::steady_clock::time_point started_;
  httplib::Server server_;
};

}  // namespace itrace
