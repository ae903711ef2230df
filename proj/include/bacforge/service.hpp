#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "bacforge/biodata.hpp"
#include "bacforge/io.hpp"

namespace bacforge {

inline constexpr std::size_t kMaxRequestBytes = 1 << 20;

struct ApiResponse {
  int status = 200;
  json body;
};

/// Stateless request router over an immutable database. `handle` is what
/// the HTTP binding calls; it is also driven directly by tests.
class Service {
 public:
  explicit Service(std::shared_ptr<const Database> db);

  /// `target` is the request path including any query string.
  ApiResponse handle(std::string_view method, std::string_view target, std::string_view body) const;

 private:
  ApiResponse list_plasmids() const;
  ApiResponse get_plasmid(std::string_view id) const;
  ApiResponse get_sites(std::string_view id, std::string_view category) const;
  ApiResponse encode(const json& req) const;
  ApiResponse decode(const json& req) const;
  ApiResponse clone(const json& req) const;
  ApiResponse declone(const json& req) const;
  ApiResponse gel(const json& req) const;

  std::shared_ptr<const Database> db_;
};

json api_error(std::string_view code, std::string_view message, const json& detail = nullptr);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;  // optional UI bundle
};

/// HTTP binding of Service with CORS headers. Port 0 binds an ephemeral port.
class HttpServer {
 public:
  HttpServer(std::shared_ptr<const Database> db, ServeOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns the bound port; throws when the address is unavailable.
  int bind();
  /// Blocks until stop() is called from another thread.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocks until the server stops. Throws when the port cannot be bound.
void serve(std::shared_ptr<const Database> db, const ServeOptions& options);

}  // namespace bacforge
