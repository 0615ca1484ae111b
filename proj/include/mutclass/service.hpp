#pragma once

// Interactive mutation sessions over HTTP. `Service` holds the state and
// answers requests as (status, JSON) pairs; `bind_routes` attaches it to an
// httplib server.

#include "mutclass/io.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

namespace mutclass {

struct Response {
  int status = 200;
  Json body;
};

struct Session {
  std::string id;
  bool principal = false;
  ExtendedMatrix initial;
  ExtendedMatrix current;
  std::vector<std::size_t> history;
  std::optional<bool> principal_finite;  // mutation invariant, computed once
  std::chrono::steady_clock::time_point last_used;
  std::mutex mutex;
};

struct Job {
  std::string id;
  std::mutex mutex;
  std::string status = "running";
  Json result;
};

class Service {
 public:
  using Clock = std::chrono::steady_clock;

  explicit Service(std::chrono::seconds ttl = std::chrono::hours(1)) : ttl_(ttl), rng_(std::random_device{}()) {}

  ~Service() {
    std::vector<std::thread> workers;
    {
      std::lock_guard lock(mutex_);
      workers.swap(workers_);
    }
    for (auto& w : workers) w.join();
  }

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Body: a matrix document, optionally with "mode": "plain" | "principal";
  /// or {"matrix": document, "mode": ...}.
  Response create_session(const Json& body) {
    try {
      if (!body.is_object()) return error(422, "DocumentError", "body must be a JSON object");
      const Json& doc = body.contains("matrix") ? body["matrix"] : body;
      const std::string mode = body.value("mode", std::string("plain"));
      if (mode != "plain" && mode != "principal") return error(422, "DocumentError", "mode must be plain or principal");
      MatrixDocument parsed = parse_document(doc);
      auto s = std::make_shared<Session>();
      s->principal = mode == "principal";
      if (s->principal) {
        if (parsed.matrix.frozen_count() != 0)
          return error(422, "DocumentError", "principal mode needs a square matrix");
        s->initial = principal_extension(parsed.matrix.principal());
      } else {
        s->initial = parsed.matrix;
      }
      s->current = s->initial;
      s->last_used = Clock::now();
      {
        std::lock_guard lock(mutex_);
        evict_expired();
        s->id = token();
        sessions_[s->id] = s;
      }
      std::lock_guard lock(s->mutex);
      return {201, state(*s)};
    } catch (const DocumentError& e) {
      return error(422, "DocumentError", e.what(), e.where());
    } catch (const std::exception& e) {
      return error(422, "DocumentError", e.what());
    }
  }

  Response get_state(const std::string& id) {
    auto s = find(id);
    if (!s) return not_found(id);
    std::lock_guard lock(s->mutex);
    return {200, state(*s)};
  }

  /// k is 1-based.
  Response mutate(const std::string& id, long long k) {
    auto s = find(id);
    if (!s) return not_found(id);
    std::lock_guard lock(s->mutex);
    if (k < 1 || static_cast<std::size_t>(k) > s->current.rows())
      return error(422, "IndexError", "mutation index " + std::to_string(k) + " out of range");
    const std::size_t idx = static_cast<std::size_t>(k - 1);
    if (idx >= s->current.mutable_count())
      return error(409, "FrozenIndexError", "vertex " + std::to_string(k) + " is frozen");
    s->current = s->current.mutate(idx);
    s->history.push_back(idx);
    return {200, state(*s)};
  }

  /// Drops the last mutation and replays the remaining history.
  Response undo(const std::string& id) {
    auto s = find(id);
    if (!s) return not_found(id);
    std::lock_guard lock(s->mutex);
    if (s->history.empty()) return error(409, "EmptyHistory", "nothing to undo");
    s->history.pop_back();
    s->current = s->initial.mutate(s->history);
    return {200, state(*s)};
  }

  /// Body: {"kind": "classify" | "enumerate", "budget": N}. Starts a job on
  /// the session's current matrix.
  Response analyze(const std::string& id, const Json& body) {
    auto s = find(id);
    if (!s) return not_found(id);
    if (!body.is_object()) return error(422, "DocumentError", "body must be a JSON object");
    const std::string kind = body.value("kind", std::string());
    if (kind != "classify" && kind != "enumerate")
      return error(422, "DocumentError", "kind must be classify or enumerate");
    ExploreBudget budget;
    if (body.contains("budget")) {
      const Json& n = body["budget"];
      if (!n.is_number_integer() || n.get<long long>() < 1)
        return error(422, "DocumentError", "budget must be a positive integer");
      budget.max_nodes = n.get<std::size_t>();
    }
    ExtendedMatrix current;
    {
      std::lock_guard lock(s->mutex);
      current = s->current;
    }
    auto job = std::make_shared<Job>();
    {
      std::lock_guard lock(mutex_);
      job->id = token();
      jobs_[job->id] = job;
      workers_.emplace_back([job, kind, budget, current] {
        Json result;
        std::string status = "done";
        try {
          if (kind == "classify")
            result = classify_json(current.principal());
          else
            result = class_report_json(explore_extended_class(current, budget));
        } catch (const std::exception& e) {
          status = "failed";
          result = error_json("AnalysisError", e.what());
        }
        std::lock_guard lock(job->mutex);
        job->status = status;
        job->result = std::move(result);
      });
    }
    return {202, {{"job", job->id}, {"status", "running"}}};
  }

  Response get_job(const std::string& id) {
    std::shared_ptr<Job> job;
    {
      std::lock_guard lock(mutex_);
      auto it = jobs_.find(id);
      if (it == jobs_.end()) return error(404, "NotFound", "unknown job " + id);
      job = it->second;
    }
    std::lock_guard lock(job->mutex);
    Json out{{"job", job->id}, {"status", job->status}};
    if (job->status != "running") out["result"] = job->result;
    return {200, out};
  }

  std::size_t session_count() {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

  /// Removes sessions idle for longer than the TTL.
  void evict_expired() {
    const auto now = Clock::now();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::unique_lock lock(it->second->mutex, std::try_to_lock);
      if (lock.owns_lock() && now - it->second->last_used > ttl_) {
        lock.unlock();
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }

 private:
  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    it->second->last_used = Clock::now();
    return it->second;
  }

  Json state(Session& s) {
    if (!s.principal_finite) s.principal_finite = decide_finite_type(diagram_of(s.current.principal())).finite;
    Json out;
    out["id"] = s.id;
    out["mode"] = s.principal ? "principal" : "plain";
    out["matrix"] = document_json(s.current);
    out["history"] = indices_json(s.history);
    out["diagram"] = diagram_json(diagram_of(s.current));
    Json badges;
    badges["finite_type"] = *s.principal_finite;
    if (auto c = scan_certificate(s.current))
      badges["certificate"] = to_string(c->kind);
    else
      badges["certificate"] = nullptr;
    out["badges"] = std::move(badges);
    return out;
  }

  static Response error(int status, const std::string& kind, const std::string& message,
                        const std::string& where = {}) {
    return {status, error_json(kind, message, where)};
  }

  static Response not_found(const std::string& id) { return error(404, "NotFound", "unknown session " + id); }

  std::string token() {
    std::uniform_int_distribution<unsigned long long> dist;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", dist(rng_));
    return buf;
  }

  std::chrono::seconds ttl_;
  std::mutex mutex_;
  std::mt19937_64 rng_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::thread> workers_;
};

inline void bind_routes(httplib::Server& server, Service& service) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto body_of = [](const httplib::Request& req) -> std::optional<Json> {
    try {
      return Json::parse(req.body.empty() ? "{}" : req.body);
    } catch (const nlohmann::json::parse_error&) {
      return std::nullopt;
    }
  };
  const Response malformed{422, error_json("DocumentError", "malformed JSON body")};

  server.Post("/sessions", [=, &service](const httplib::Request& req, httplib::Response& res) {
    auto body = body_of(req);
    reply(res, body ? service.create_session(*body) : malformed);
  });
  server.Get(R"(/sessions/([0-9a-f]+))", [=, &service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.get_state(req.matches[1]));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/mutate)", [=, &service](const httplib::Request& req, httplib::Response& res) {
    auto body = body_of(req);
    if (!body || !body->is_object() || !body->contains("k") || !(*body)["k"].is_number_integer())
      return reply(res, {422, error_json("DocumentError", "body must be {\"k\": integer}")});
    reply(res, service.mutate(req.matches[1], (*body)["k"].get<long long>()));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/undo)", [=, &service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.undo(req.matches[1]));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/analyze)", [=, &service](const httplib::Request& req, httplib::Response& res) {
    auto body = body_of(req);
    reply(res, body ? service.analyze(req.matches[1], *body) : malformed);
  });
  server.Get(R"(/jobs/([0-9a-f]+))", [=, &service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.get_job(req.matches[1]));
  });
}

}  // namespace mutclass
