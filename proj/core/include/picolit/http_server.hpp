#pragma once

#include <memory>
#include <string>

#include "picolit/service.hpp"

namespace picolit {

/// JSON-over-HTTP front end for a Service:
///   GET  /health, /topics, /search, /relation-docs
///   POST /eval
/// Errors are returned as {"code", "message"} with a 4xx/5xx status.
class HttpServer {
  public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and serves until stop(); returns false if binding failed.
    bool listen(const std::string& host, int port);
    /// Binds to a free port and returns it (negative on failure); call serve() next.
    int bind_any_port(const std::string& host);
    bool serve();
    void stop();
    bool running() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> m_impl;
};

}  // namespace picolit
