#pragma once

#include "lotforge/service.hpp"

#include <exception>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace lotforge {

int http_status(ErrorKind kind);

/// Maps an exception to an HTTP status and a {code, message, details[]} body.
std::pair<int, std::string> error_response(const std::exception& e);

/// JSON binding of DesignService. Static files under `web_root`, when given,
/// are served at /.
class HttpServer {
public:
  explicit HttpServer(DesignService& service, std::optional<std::filesystem::path> web_root = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without accepting yet; port 0 picks a free port. Returns the bound
  /// port. Throws Error(Config) when the port is taken.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires a prior bind().
  void run();
  void stop();
  void wait_until_ready() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lotforge
