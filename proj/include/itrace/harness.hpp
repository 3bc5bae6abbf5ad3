#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "itrace/dataset.hpp"
#include "itrace/errors.hpp"
#include "itrace/focus_engine.hpp"
#include "itrace/snapshot.hpp"

namespace itrace {

struct LogRecord {
  std::int64_t timestamp_ms = 0;
  std::string kind;  // hover, click, drag, toggleMarker, toggleFoci, attract, pin, transparency
  std::string target;
  Json payload = Json::object();
};

// One NDJSON line; field order is fixed.
inline std::string log_line(const LogRecord& r) {
  Json j = Json::object();
  j["timestampMs"] = r.timestamp_ms;
  j["kind"] = r.kind;
  j["targetId"] = r.target;
  j["payload"] = r.payload;
  return j.dump();
}

inline std::string log_text(const std::vector<LogRecord>& log) {
  std::string out;
  for (const auto& r : log) out += log_line(r) + "\n";
  return out;
}

struct SessionMetrics {
  std::size_t hover_count = 0;
  std::size_t click_count = 0;
  std::optional<double> hover_to_click_ratio;  // absent without clicks
  std::size_t command_count = 0;
  std::int64_t duration_ms = 0;
};

inline SessionMetrics compute_metrics(const std::vector<LogRecord>& log) {
  SessionMetrics m;
  for (const auto& r : log) {
    if (r.kind == "hover") ++m.hover_count;
    if (r.kind == "click") ++m.click_count;
  }
  if (m.click_count > 0) m.hover_to_click_ratio = static_cast<double>(m.hover_count) / static_cast<double>(m.click_count);
  m.command_count = log.size();
  if (!log.empty()) m.duration_ms = log.back().timestamp_ms - log.front().timestamp_ms;
  return m;
}

inline Json metrics_json(const SessionMetrics& m) {
  Json j = Json::object();
  j["hoverCount"] = m.hover_count;
  j["clickCount"] = m.click_count;
  if (m.hover_to_click_ratio) j["hoverToClickRatio"] = normalized(*m.hover_to_click_ratio);
  j["commandCount"] = m.command_count;
  j["durationMs"] = m.duration_ms;
  return j;
}

// Applies protocol commands to a trace session and records the log.
class Engine {
 public:
  explicit Engine(Dataset dataset, EngineConfig config = {}) : config_(config) { reset(std::move(dataset)); }

  const TraceSession& session() const { return *session_; }
  const Scene& scene() const { return *scene_; }
  const std::vector<LogRecord>& log() const { return log_; }
  Json snapshot() const { return session_snapshot(*session_); }

  void reset(Dataset dataset) {
    scene_ = std::make_shared<const Scene>(std::move(dataset));
    session_ = std::make_unique<TraceSession>(scene_, config_);
  }

  // Applies one command object. `t` is used when the command carries none.
  // Returns the log records the command produced.
  std::vector<LogRecord> apply(const Json& cmd, std::optional<std::int64_t> t = std::nullopt) {
    if (!cmd.is_object() || !cmd.contains("cmd") || !cmd["cmd"].is_string()) {
      throw InvalidArgument("command needs a string 'cmd' field");
    }
    std::int64_t stamp = last_t_;
    if (cmd.contains("t")) {
      if (!cmd["t"].is_number_integer()) throw InvalidArgument("'t' must be an integer");
      stamp = cmd["t"].get<std::int64_t>();
    } else if (t) {
      stamp = *t;
    }
    if (stamp < last_t_) throw InvalidArgument("timestamp " + std::to_string(stamp) + " goes backwards");

    const std::string name = cmd["cmd"].get<std::string>();
    std::vector<LogRecord> out;
    auto record = [&](std::string kind, std::string target, Json payload) {
      out.push_back({stamp, std::move(kind), std::move(target), std::move(payload)});
    };

    try {
      if (name == "load") {
        if (cmd.contains("dataset")) {
          reset(parse_dataset(cmd["dataset"]));
        } else {
          reset(read_dataset(cmd.at("data").get<std::string>()));
        }
      } else if (name == "toggleMarker") {
        const auto element = cmd.at("element").get<std::string>();
        const auto r = session_->toggle_focus_marker(element);
        record("toggleMarker", element, {{"marker", r.marker}, {"enabled", r.created}});
      } else if (name == "drag") {
        const int marker = cmd.at("marker").get<int>();
        const Vec2 cursor{cmd.at("x").get<double>(), cmd.at("y").get<double>()};
        session_->drag_marker(marker, cursor);
        record("drag", marker_ref(marker), {{"x", normalized(cursor.x)}, {"y", normalized(cursor.y)}});
      } else if (name == "endDrag") {
        session_->end_drag();
        record("drag", "", {{"end", true}});
      } else if (name == "toggleFoci") {
        const int marker = cmd.at("marker").get<int>();
        session_->toggle_foci(marker);
        record("toggleFoci", marker_ref(marker), {{"enabled", session_->marker(marker).foci_enabled}});
      } else if (name == "attract") {
        const int marker = cmd.at("marker").get<int>();
        const StopMode mode = parse_stop_mode(cmd.at("mode").get<std::string>());
        session_->attract_copies(marker, mode);
        record("attract", marker_ref(marker), {{"mode", to_string(mode)}});
      } else if (name == "pin") {
        const int marker = cmd.at("marker").get<int>();
        session_->pin_link(marker);
        record("pin", marker_ref(marker), {{"action", "pin"}, {"link", *session_->marker(marker).active_link}});
      } else if (name == "unpin") {
        const auto link = cmd.at("link").get<std::size_t>();
        session_->unpin_link(link);
        record("pin", "link-" + std::to_string(link), {{"action", "unpin"}, {"link", link}});
      } else if (name == "setTransparency") {
        const TransparencyMode mode = parse_transparency(cmd.at("mode").get<std::string>());
        session_->set_transparency(mode);
        record("transparency", "", {{"scope", "links"}, {"mode", to_string(mode)}});
      } else if (name == "setUnpinnedVisibility") {
        const UnpinnedVisibility mode = parse_unpinned_visibility(cmd.at("mode").get<std::string>());
        session_->set_unpinned_visibility(mode);
        record("transparency", "", {{"scope", "unpinned"}, {"mode", to_string(mode)}});
      } else if (name == "hover" || name == "click") {
        const auto target = cmd.at("target").get<std::string>();
        const HoverInfo info = session_->hover(target);
        record(name, target, {{"label", info.label}, {"highlight", info.highlight}});
      } else {
        throw InvalidArgument("unknown command '" + name + "'");
      }
    } catch (const nlohmann::json::exception& ex) {
      throw InvalidArgument("command '" + name + "': " + ex.what());
    }

    last_t_ = stamp;
    log_.insert(log_.end(), out.begin(), out.end());
    return out;
  }

 private:
  static std::string marker_ref(int marker) { return "marker-" + std::to_string(marker); }

  EngineConfig config_;
  std::shared_ptr<const Scene> scene_;
  std::unique_ptr<TraceSession> session_;
  std::vector<LogRecord> log_;
  std::int64_t last_t_ = 0;
};

// ---------------------------------------------------------------------------
// Scripted replay.

// Commands from a JSON array or from newline-delimited JSON objects.
inline std::vector<Json> parse_script(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json arr;
    try {
      arr = Json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
      throw ReplayError(0, std::string("script is not valid JSON: ") + ex.what());
    }
    return std::vector<Json>(arr.begin(), arr.end());
  }
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const nlohmann::json::parse_error& ex) {
      throw ReplayError(out.size(), std::string("malformed command: ") + ex.what());
    }
  }
  return out;
}

struct ReplayOptions {
  std::size_t checkpoint_every = 0;  // 0: final snapshot only
  EngineConfig config;
};

struct ReplayResult {
  Json final_snapshot;
  std::vector<Json> checkpoints;
  std::vector<LogRecord> log;
  SessionMetrics metrics;
};

inline ReplayResult replay(Dataset dataset, const std::vector<Json>& script, const ReplayOptions& options = {}) {
  Engine engine(std::move(dataset), options.config);
  ReplayResult out;
  for (std::size_t i = 0; i < script.size(); ++i) {
    const Json& cmd = script[i];
    if (!cmd.is_object() || !cmd.contains("t")) throw ReplayError(i, "command needs an integer 't' timestamp");
    try {
      engine.apply(cmd);
    } catch (const Error& ex) {
      throw ReplayError(i, ex.what());
    }
    if (options.checkpoint_every > 0 && (i + 1) % options.checkpoint_every == 0) {
      out.checkpoints.push_back(engine.snapshot());
    }
  }
  out.final_snapshot = engine.snapshot();
  out.log = engine.log();
  out.metrics = compute_metrics(out.log);
  return out;
}

// ---------------------------------------------------------------------------
// Finding verification.

// Entities of `view` related to at least one member of every clause.
struct Task {
  std::string view;
  std::vector<std::vector<std::string>> clauses;
};

struct Claim {
  Task task;
  std::vector<std::string> answer;
};

inline Claim parse_claim(const Json& j) {
  try {
    Claim c;
    c.task.view = j.at("task").at("view").get<std::string>();
    c.task.clauses = j.at("task").at("clauses").get<std::vector<std::vector<std::string>>>();
    c.answer = j.at("answer").get<std::vector<std::string>>();
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("claim: ") + ex.what());
  }
}

inline Json claim_json(const Claim& c) {
  Json j = Json::object();
  j["task"] = {{"view", c.task.view}, {"clauses", c.task.clauses}};
  j["answer"] = c.answer;
  return j;
}

inline std::vector<std::string> task_answer(const RelationGraph& graph, const Task& task) {
  graph.view(task.view);
  for (const auto& clause : task.clauses) {
    for (const auto& id : clause) graph.entity(id);
  }
  std::vector<std::string> out;
  for (const auto& candidate : graph.entities_in(task.view)) {
    const auto& adj = graph.neighbours(candidate);
    const bool ok = std::all_of(task.clauses.begin(), task.clauses.end(), [&](const auto& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](const std::string& id) { return adj.contains(id); });
    });
    if (ok) out.push_back(candidate);
  }
  return out;
}

// True when the claimed set equals the ground-truth answer of the task.
inline bool verify_finding(const RelationGraph& graph, const Claim& claim) {
  for (const auto& id : claim.answer) graph.entity(id);
  const auto truth = task_answer(graph, claim.task);
  const std::set<std::string> claimed(claim.answer.begin(), claim.answer.end());
  return std::equal(claimed.begin(), claimed.end(), truth.begin(), truth.end());
}

}  // namespace itrace
