#include "expedition/http_server.hpp"

#include <httplib.h>

#include <map>

#include "expedition/error.hpp"
#include "expedition/wire.hpp"

namespace expedition {

namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const wire::ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send(res, status, wire::ordered_json{{"error", message}});
}

std::multimap<std::string, std::string> query_params(const httplib::Request& req) {
    return {req.params.begin(), req.params.end()};
}

// Maps engine exceptions onto HTTP status codes.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const InvalidArgument& e) {
        send_error(res, 400, e.what());
    } catch (const NoMatchError& e) {
        send_error(res, 400, e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, e.what());
    }
}

}  // namespace

HttpServer::HttpServer(std::shared_ptr<const Engine> engine)
    : engine_(std::move(engine)), server_(std::make_unique<httplib::Server>()) {
    auto& srv = *server_;
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});

    srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    srv.Post("/api/search", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto parsed = wire::parse_search_body(req.body, engine_->defaults());
            send(res, 200, wire::to_json(engine_->search(parsed.request, parsed.params)));
        });
    });

    srv.Get("/api/timeline", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto parsed = wire::parse_query_params(query_params(req), engine_->defaults());
            send(res, 200, wire::to_json(engine_->timeline(parsed.request, parsed.params)));
        });
    });

    srv.Get("/api/entities", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto parsed = wire::parse_query_params(query_params(req), engine_->defaults());
            send(res, 200, wire::selectors_to_json(engine_->entities(parsed.request, parsed.params)));
        });
    });

    srv.Get(R"(/api/document/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto view = engine_->document(req.matches[1].str());
            if (!view) {
                send_error(res, 404, "unknown document '" + req.matches[1].str() + "'");
                return;
            }
            send(res, 200, wire::to_json(*view));
        });
    });

    srv.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
        send(res, 200, wire::to_json(engine_->health()));
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

int HttpServer::start(const std::string& host, int port) {
    int bound = bind(host, port);
    thread_ = std::thread([this] { listen(); });
    server_->wait_until_ready();
    return bound;
}

void HttpServer::stop() {
    server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace expedition
