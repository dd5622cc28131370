#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "trusskit/io.hpp"
#include "trusskit/truss.hpp"

namespace trusskit {

struct HistoryEntry {
  int edge = -1;
  bool removed = false;  // state after the toggle
  int c = 0;
  int nullity = 0;
  bool recoverable = false;
};

// Immutable session state; readers hold a shared pointer to one snapshot.
struct Snapshot {
  std::uint64_t id = 0;
  Truss base;
  Truss current;
  std::vector<HistoryEntry> history;
  Json analysis;  // cached report of current
};

struct ApiResponse {
  int status = 200;
  Json body;
};

// Transport-free handler for the /api routes. Mutations are serialized; a
// mutating request whose "snapshot" field (or If-Match header) names an
// older snapshot is rejected with 409.
class ApiHandler {
 public:
  explicit ApiHandler(Truss base);

  ApiResponse handle(const std::string& method, const std::string& path, const std::string& body = "",
                     const std::string& if_match = "");
  std::shared_ptr<const Snapshot> snapshot() const;

 private:
  ApiResponse get_truss() const;
  ApiResponse put_truss(const Json& body);
  ApiResponse generate(const Json& body);
  ApiResponse toggle(int edge, const Json& body, const std::string& if_match);
  ApiResponse analysis() const;
  ApiResponse flexes() const;
  ApiResponse wagonwheels() const;
  ApiResponse history() const;
  ApiResponse reset(const Json& body, const std::string& if_match);

  void replace_base(Truss t);
  bool stale(const Json& body, const std::string& if_match, std::uint64_t current) const;

  mutable std::shared_mutex mutex_;
  std::mutex writer_;
  std::shared_ptr<const Snapshot> state_;
};

// httplib server routing /api/* to a handler.
class HttpServer {
 public:
  explicit HttpServer(ApiHandler& handler);
  ~HttpServer();
  // Port 0 picks a free port; returns the bound port.
  int bind(const std::string& host, int port);
  void run();  // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks serving /api on host:port until the process is stopped.
void serve(ApiHandler& handler, const std::string& host, int port);

}  // namespace trusskit
