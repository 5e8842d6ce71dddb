#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "blockade/io.hpp"

namespace blockade {

/// Per-request wall-clock budget; unlimited when `ms` is empty.
class Deadline {
 public:
  explicit Deadline(std::optional<long> ms = std::nullopt);

  bool expired() const;

 private:
  std::optional<std::chrono::steady_clock::time_point> until_;
};

/// Operations: delaunay, blocks, construct, certify-lb, certify-epsilon,
/// solve, probe, health. Returns the bare result; throws Error.
Json run_op(const std::string& op, const Json& params, const Deadline& deadline = Deadline());

struct ApiResponse {
  int status = 200;
  Json body;
};

/// {"ok":true,"result":...} or {"ok":false,"error":{code,message,detail}}.
/// 400 for schema errors, 422 for domain failures, 503 when the time budget
/// runs out (detail carries a resume cursor where one exists).
ApiResponse handle(const std::string& op, const Json& params, const Deadline& deadline = Deadline());

/// Same as handle() for a raw request body.
ApiResponse handle_body(const std::string& op, const std::string& body, const Deadline& deadline = Deadline());

/// Serializes a body exactly as the server sends it.
std::string dump(const Json& body);

/// BLOCKADE_TIME_BUDGET_MS; unset, empty or 0 means unlimited.
std::optional<long> time_budget_from_env();

struct ServeOptions {
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8080;
  std::optional<std::string> static_dir;
  std::optional<long> time_budget_ms;
};

/// HTTP front end. Routes live under /api/ and /api/v1/.
class Server {
 public:
  explicit Server(ServeOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket and returns the port.
  int bind();
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// bind() + listen().
void serve(const ServeOptions& options);

}  // namespace blockade
