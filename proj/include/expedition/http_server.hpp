#pragma once

#include <memory>
#include <string>
#include <thread>

#include "expedition/service.hpp"

namespace httplib {
class Server;
}

namespace expedition {

/// REST front end for an Engine:
///   POST /api/search, GET /api/timeline, GET /api/entities,
///   GET /api/document/{id}, GET /api/health.
/// Responses carry permissive CORS headers for the browser client.
class HttpServer {
public:
    explicit HttpServer(std::shared_ptr<const Engine> engine);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds; port 0 picks a free port. Returns the bound port. Throws Error on failure.
    int bind(const std::string& host, int port);
    /// Serves until stop(); must follow bind().
    void listen();
    /// bind() + listen() on a background thread.
    int start(const std::string& host, int port);
    void stop();

private:
    std::shared_ptr<const Engine> engine_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace expedition
