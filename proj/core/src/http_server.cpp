#include "lotforge/http_server.hpp"

#include "lotforge/scene_codec.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <sys/socket.h>

namespace lotforge {

namespace {

using OJson = nlohmann::ordered_json;

constexpr const char* kJson = "application/json";

bool flag(const httplib::Request& req, const std::string& name) {
  if (!req.has_param(name)) return false;
  const std::string v = req.get_param_value(name);
  return v.empty() || v == "1" || v == "true" || v == "yes";
}

std::string required_string(const nlohmann::json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorKind::Validation, std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

nlohmann::json json_body(const httplib::Request& req) {
  nlohmann::json j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::Parse, "request body must be a JSON object");
  return j;
}

}  // namespace

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound: return 404;
    case ErrorKind::Conflict: return 409;
    case ErrorKind::Parse:
    case ErrorKind::Version:
    case ErrorKind::Config: return 400;
    case ErrorKind::Dimension:
    case ErrorKind::Pose:
    case ErrorKind::Placement:
    case ErrorKind::Catalog:
    case ErrorKind::DuplicateId:
    case ErrorKind::Affordance:
    case ErrorKind::Validation: return 422;
    default: return 500;
  }
}

std::pair<int, std::string> error_response(const std::exception& e) {
  OJson body;
  OJson details = OJson::array();
  int status = 500;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    status = http_status(err->kind());
    body["code"] = to_string(err->kind());
    if (const auto* vf = dynamic_cast<const ValidationFailed*>(err)) {
      details = OJson::parse(issues_json(vf->issues()));
    } else if (const auto* pe = dynamic_cast<const ParseError*>(err)) {
      details.push_back({{"line", pe->line()}, {"column", pe->column()}});
    }
  } else {
    body["code"] = "internal";
  }
  body["message"] = e.what();
  body["details"] = std::move(details);
  return {status, body.dump()};
}

struct HttpServer::Impl {
  DesignService& service;
  httplib::Server server;
  bool bound = false;

  explicit Impl(DesignService& s) : service(s) {}

  template <typename F>
  httplib::Server::Handler wrap(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const std::exception& e) {
        auto [status, body] = error_response(e);
        res.status = status;
        res.set_content(body, kJson);
      }
    };
  }

  void routes() {
    server.Get("/api/catalog", wrap([this](const httplib::Request&, httplib::Response& res) {
      res.set_content(encode_catalog(service.catalog()), kJson);
    }));

    server.Get("/api/practice", wrap([this](const httplib::Request&, httplib::Response& res) {
      res.set_content(encode_scene(service.practice()), kJson);
    }));

    server.Post("/api/assignments", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const nlohmann::json body = json_body(req);
      std::optional<std::uint64_t> seed;
      if (auto it = body.find("seed"); it != body.end() && !it->is_null()) {
        if (!it->is_number_unsigned()) throw Error(ErrorKind::Validation, "'seed' must be a non-negative integer");
        seed = it->get<std::uint64_t>();
      }
      const Assignment a = service.assign(required_string(body, "participant_id"), seed);
      res.set_content(assignment_json(a), kJson);
    }));

    server.Post("/api/scenes/validate-practice", wrap([this](const httplib::Request& req, httplib::Response& res) {
      res.set_content(match_report_json(service.validate_practice(decode_scene(req.body))), kJson);
    }));

    server.Post("/api/scenes", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = service.save_scene(decode_scene(req.body));
      res.status = 201;
      res.set_header("Location", "/api/scenes/" + id);
      res.set_content(OJson{{"scene_id", id}}.dump(), kJson);
    }));

    server.Get(R"(/api/scenes/([^/]+))", wrap([this](const httplib::Request& req, httplib::Response& res) {
      res.set_content(encode_scene(service.get_scene(req.matches[1])), kJson);
    }));

    server.Get(R"(/api/scenes/([^/]+)/score)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      // Stored scenes are immutable, so the id and config version identify the result.
      const std::string etag = "\"" + id + "-c" + service.config().version + "\"";
      const ScoreResult result = service.score(id);
      res.set_header("ETag", etag);
      res.set_header("Cache-Control", "max-age=3600");
      if (req.get_header_value("If-None-Match") == etag) {
        res.status = 304;
        return;
      }
      res.set_content(score_report_json(result, service.config()), kJson);
    }));

    server.Get(R"(/api/scenes/([^/]+)/plan\.svg)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      RenderOptions opts;
      opts.show_shadows = flag(req, "shadows");
      opts.legend = flag(req, "legend");
      if (req.has_param("sun")) {
        opts.sun = parse_sun(req.get_param_value("sun"));
        opts.show_shadows = true;
      }
      res.set_content(service.plan(req.matches[1], opts), "image/svg+xml");
    }));

    server.Post("/api/submissions", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const nlohmann::json body = json_body(req);
      std::optional<std::string> screenshot;
      if (auto it = body.find("screenshot"); it != body.end() && !it->is_null()) {
        if (!it->is_string()) throw Error(ErrorKind::Validation, "'screenshot' must be a string");
        screenshot = it->get<std::string>();
      }
      const Submission s =
          service.record_submission(required_string(body, "participant_id"), required_string(body, "scenario_id"),
                                    required_string(body, "scene_id"), std::move(screenshot));
      res.status = 201;
      res.set_content(OJson{{"submission_id", s.submission_id}, {"created_at", s.created_at}}.dump(), kJson);
    }));

    server.Get(R"(/api/submissions/([^/]+))", wrap([this](const httplib::Request& req, httplib::Response& res) {
      res.set_content(submission_json(service.get_submission(req.matches[1])), kJson);
    }));
  }
};

HttpServer::HttpServer(DesignService& service, std::optional<std::filesystem::path> web_root)
    : impl_(std::make_unique<Impl>(service)) {
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  impl_->server.set_payload_max_length(32u << 20);
  impl_->routes();
  if (web_root && std::filesystem::is_directory(*web_root)) impl_->server.set_mount_point("/", web_root->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = 0;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound <= 0) throw Error(ErrorKind::Config, "cannot bind " + host + ":" + std::to_string(port) + " (port busy?)");
  impl_->bound = true;
  return bound;
}

void HttpServer::run() {
  if (!impl_->bound) throw Error(ErrorKind::Config, "server is not bound");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace lotforge
