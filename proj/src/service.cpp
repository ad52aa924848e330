#include "alignkit/service.hpp"

#include <cstdio>
#include <vector>

#include <httplib.h>

namespace alignkit {
namespace {

HttpResponse json_response(int status, const Json& j) { return {status, j.dump(), "application/json"}; }

HttpResponse error_response(ErrorCode code, const std::string& message) {
  return json_response(http_status_for(code),
                       Json{{"code", std::string(error_code_name(code))}, {"message", message}});
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    auto slash = path.find('/');
    auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

Json require_object(std::string_view body) {
  auto j = body.empty() ? Json::object() : parse_json(body);
  if (!j.is_object()) throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
  return j;
}

std::size_t parse_steps(const Json& body, std::size_t fallback) {
  if (!body.contains("steps")) return fallback;
  const auto& s = body["steps"];
  if (!s.is_number_integer()) throw Error(ErrorCode::BadRequest, "steps must be an integer");
  if (s.get<long long>() < 1) throw Error(ErrorCode::InvalidConfig, "steps must be at least 1");
  return s.get<std::size_t>();
}

ConstraintSet locks_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::BadRequest, "locked_columns must be an array");
  ConstraintSet locks;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw Error(ErrorCode::BadRequest, "locked_columns must hold integers");
    if (c.get<long long>() < 1) throw Error(ErrorCode::BadColumn, "columns are numbered from 1");
    locks.lock(c.get<std::size_t>() - 1);
  }
  return locks;
}

}  // namespace

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Busy: return 409;
    case ErrorCode::BadRequest: return 400;
    case ErrorCode::IoError: return 500;
    default: return 422;
  }
}

Json session_view_to_json(const SessionView& v, const ScoreBreakdown& score) {
  Json locks = Json::array();
  for (auto c : v.locks.columns()) locks.push_back(c + 1);
  Json changed = Json::array();
  for (const auto& [r, c] : v.changed_cells) changed.push_back(Json{{"row", r + 1}, {"col", c + 1}});
  Json j{{"id", v.id},
         {"rows", v.alignment.rows()},
         {"cols", v.alignment.cols()},
         {"source_texts", v.alignment.source_texts()},
         {"grid", grid_to_json(v.alignment)},
         {"locked_columns", locks},
         {"score", score_to_json(score)},
         {"weights", weights_to_json(v.weights)},
         {"search_cfg", search_config_to_json(v.search_cfg)},
         {"status", std::string(session_status_name(v.status))},
         {"progress", Json{{"done", v.progress_done}, {"limit", v.progress_limit}}},
         {"changed_cells", changed},
         {"can_undo", v.can_undo},
         {"can_redo", v.can_redo}};
  j["last_stop_reason"] = v.last_stop_reason ? Json(std::string(stop_reason_name(*v.last_stop_reason))) : Json();
  j["last_error"] = v.last_error.empty() ? Json() : Json(v.last_error);
  return j;
}

ApiService::ApiService(ServiceOptions options) : options_(std::move(options)), id_state_(options_.id_seed) {
  if (!options_.provider) throw Error(ErrorCode::InvalidConfig, "no embedding provider");
  options_.weights.validate();
  options_.search_cfg.validate();
}

ApiService::~ApiService() { stop(); }

// splitmix64 over a counter; ids are opaque to clients.
std::string ApiService::next_id() {
  std::uint64_t z = (id_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(z));
  return buf;
}

std::shared_ptr<Session> ApiService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no session " + id);
  return it->second;
}

HttpResponse ApiService::snapshot(const Session& s, int status) const {
  auto v = s.view();
  if (!v.locks.fits(v.alignment.cols()))
    throw Error(ErrorCode::CorruptGrid, "session state failed validation");
  auto score = total_score(v.alignment, s.provider(), v.weights);
  return json_response(status, session_view_to_json(v, score));
}

HttpResponse ApiService::create_session(const Json& body) {
  if (!body.contains("texts") || !body["texts"].is_array())
    throw Error(ErrorCode::BadRequest, "texts must be an array of strings");
  std::vector<std::string> texts;
  for (const auto& t : body["texts"]) {
    if (!t.is_string()) throw Error(ErrorCode::BadRequest, "texts must be an array of strings");
    texts.push_back(t.get<std::string>());
  }
  Weights weights = options_.weights;
  SearchConfig cfg = options_.search_cfg;
  if (body.contains("config")) {
    const auto& c = body["config"];
    if (!c.is_object()) throw Error(ErrorCode::BadRequest, "config must be an object");
    if (c.contains("weights")) weights = weights_from_json(c["weights"], weights);
    if (c.contains("search_cfg")) cfg = search_config_from_json(c["search_cfg"], cfg);
  }
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = next_id();
  }
  std::shared_ptr<Session> s =
      Session::create(id, texts, options_.provider, weights, cfg, options_.session);
  {
    std::lock_guard lock(mu_);
    sessions_[id] = s;
  }
  return snapshot(*s, 201);
}

HttpResponse ApiService::import_session(const Json& body) {
  auto doc = save_document_from_json(body);
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = next_id();
  }
  std::shared_ptr<Session> s = Session::load(id, std::move(doc), options_.provider, options_.session);
  {
    std::lock_guard lock(mu_);
    sessions_[id] = s;
  }
  return snapshot(*s, 201);
}

HttpResponse ApiService::handle(std::string_view method, std::string_view path,
                                const std::map<std::string, std::string>& query, std::string_view body) {
  try {
    return route(method, path, query, body);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const Json::exception& e) {
    return error_response(ErrorCode::BadRequest, e.what());
  } catch (const std::exception& e) {
    return json_response(500, Json{{"code", "Internal"}, {"message", e.what()}});
  }
}

HttpResponse ApiService::route(std::string_view method, std::string_view path,
                               const std::map<std::string, std::string>& query, std::string_view body) {
  auto parts = split_path(path);
  if (parts.empty() || parts[0] != "sessions") throw Error(ErrorCode::NotFound, "no such endpoint");

  if (parts.size() == 1) {
    if (method == "POST") return create_session(require_object(body));
    throw Error(ErrorCode::NotFound, "no such endpoint");
  }
  if (parts.size() == 2 && parts[1] == "import") {
    if (method == "POST") return import_session(parse_json(body));
    throw Error(ErrorCode::NotFound, "no such endpoint");
  }

  auto session = find(std::string(parts[1]));
  if (parts.size() == 2) {
    if (method == "GET") return snapshot(*session);
    if (method == "DELETE") {
      session->cancel();
      std::lock_guard lock(mu_);
      sessions_.erase(std::string(parts[1]));
      return {204, "", "application/json"};
    }
    throw Error(ErrorCode::NotFound, "no such endpoint");
  }
  if (parts.size() != 3) throw Error(ErrorCode::NotFound, "no such endpoint");
  const std::string_view action = parts[2];

  if (method == "GET" && action == "score")
    return json_response(200, score_to_json(session->score()));
  if (method == "GET" && action == "export") {
    auto it = query.find("format");
    std::string format = it == query.end() ? "json" : it->second;
    if (format == "json") return json_response(200, save_document_to_json(session->save()));
    auto fmt = parse_table_format(format);
    auto text = render_table(session->view().alignment, fmt);
    return {200, text, fmt == TableFormat::Html ? "text/html" : "text/tab-separated-values"};
  }
  if (method == "POST" && action == "ops") {
    auto j = require_object(body);
    if (!j.contains("op")) throw Error(ErrorCode::BadRequest, "missing op");
    session->apply_user_op(edit_op_from_json(j["op"]));
    return snapshot(*session);
  }
  if (method == "POST" && action == "realign") {
    auto j = require_object(body);
    session->start_realign(parse_steps(j, kStandardSearchSteps));
    return snapshot(*session, 202);
  }
  if (method == "POST" && action == "cancel") {
    session->cancel();
    return snapshot(*session);
  }
  if (method == "POST" && action == "undo") {
    session->undo();
    return snapshot(*session);
  }
  if (method == "POST" && action == "redo") {
    session->redo();
    return snapshot(*session);
  }
  if (method == "PUT" && action == "locks") {
    auto j = require_object(body);
    if (!j.contains("locked_columns")) throw Error(ErrorCode::BadRequest, "missing locked_columns");
    session->set_locks(locks_from_json(j["locked_columns"]));
    return snapshot(*session);
  }
  if (method == "PUT" && action == "config") {
    auto j = require_object(body);
    auto v = session->view();
    std::optional<Weights> w;
    std::optional<SearchConfig> c;
    if (j.contains("weights")) w = weights_from_json(j["weights"], v.weights);
    if (j.contains("search_cfg")) c = search_config_from_json(j["search_cfg"], v.search_cfg);
    session->set_config(w, c);
    return snapshot(*session);
  }
  throw Error(ErrorCode::NotFound, "no such endpoint");
}

bool ApiService::bind(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    auto out = handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const char* pattern = R"(/sessions(/.*)?)";
  server_->Get(pattern, dispatch);
  server_->Post(pattern, dispatch);
  server_->Put(pattern, dispatch);
  server_->Delete(pattern, dispatch);
  if (!options_.static_dir.empty()) server_->set_mount_point("/", options_.static_dir);
  if (port == 0) {
    int p = server_->bind_to_any_port(host);
    if (p < 0) return false;
    port_ = p;
    return true;
  }
  if (!server_->bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

void ApiService::listen_after_bind() {
  if (server_) server_->listen_after_bind();
}

void ApiService::stop() {
  if (server_) server_->stop();
}

}  // namespace alignkit
