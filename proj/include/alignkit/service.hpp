#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "alignkit/embeddings.hpp"
#include "alignkit/error.hpp"
#include "alignkit/json_io.hpp"
#include "alignkit/session.hpp"

namespace httplib {
class Server;
}

namespace alignkit {

/// 404 NotFound, 409 Busy, 400 BadRequest, 500 IoError, 422 everything else.
int http_status_for(ErrorCode code);

/// Wire form of a session: 1-based indices, grid as token arrays.
Json session_view_to_json(const SessionView& v, const ScoreBreakdown& score);

struct ServiceOptions {
  std::shared_ptr<const EmbeddingProvider> provider;
  Weights weights;
  SearchConfig search_cfg;
  SessionOptions session;
  /// Seeds session id generation.
  std::uint64_t id_seed = 0;
  /// When set, files under this directory are served at "/".
  std::string static_dir;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Session store plus request routing. handle() is transport-free; listen()
/// puts it behind an HTTP server.
class ApiService {
 public:
  explicit ApiService(ServiceOptions options);
  ~ApiService();

  HttpResponse handle(std::string_view method, std::string_view path,
                      const std::map<std::string, std::string>& query, std::string_view body);

  /// Binds and serves until stop(). Port 0 picks a free port; see port().
  bool bind(const std::string& host, int port);
  void listen_after_bind();
  void stop();
  int port() const { return port_; }

  std::shared_ptr<Session> find(const std::string& id) const;

 private:
  HttpResponse route(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string>& query, std::string_view body);
  HttpResponse create_session(const Json& body);
  HttpResponse import_session(const Json& body);
  HttpResponse snapshot(const Session& s, int status = 200) const;
  std::string next_id();

  ServiceOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t id_state_;
  std::unique_ptr<httplib::Server> server_;
  std::atomic<int> port_{0};
};

}  // namespace alignkit
