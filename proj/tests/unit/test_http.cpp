#include <doctest.h>

#include <httplib.h>
#include <json.hpp>

#include <future>

#include "expedition/http_server.hpp"
#include "fixtures.hpp"

using namespace expedition;
using nlohmann::json;

namespace {

struct Running {
    HttpServer server{std::make_shared<const Engine>(fixtures::tiny6_shared())};
    int port = server.start("127.0.0.1", 0);
    httplib::Client client{"127.0.0.1", port};
};

}  // namespace

TEST_CASE("REST endpoints on TINY6") {
    Running srv;
    auto& cli = srv.client;

    SUBCASE("health") {
        auto res = cli.Get("/api/health");
        REQUIRE(res);
        CHECK(res->status == 200);
        auto j = json::parse(res->body);
        CHECK(j["doc_count"] == 6);
        CHECK(j["span"]["start"] == "1990-05");
        CHECK(j["format_version"] == 1);
        CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    }
    SUBCASE("search") {
        auto res = cli.Post("/api/search", R"({"q":"police new york","model":"TEXTUAL"})", "application/json");
        REQUIRE(res);
        CHECK(res->status == 200);
        auto j = json::parse(res->body);
        REQUIRE_FALSE(j["results"].empty());
        for (std::size_t i = 0; i < j["results"].size(); ++i) CHECK(j["results"][i]["rank"] == i + 1);

        auto div = json::parse(
            cli.Post("/api/search", R"({"q":"world trade center","model":"TEMPORAL_DIV","k":2})", "application/json")->body);
        REQUIRE(div["results"].size() == 2);
        CHECK(div["results"][0]["published"].get<std::string>().substr(0, 7) !=
              div["results"][1]["published"].get<std::string>().substr(0, 7));

        CHECK(cli.Post("/api/search", R"({"q":""})", "application/json")->status == 400);
        CHECK(cli.Post("/api/search", "not json", "application/json")->status == 400);
        auto unseen = cli.Post("/api/search", R"({"q":"zzzz"})", "application/json");
        CHECK(unseen->status == 200);
        CHECK(json::parse(unseen->body)["no_matches"] == true);
    }
    SUBCASE("timeline") {
        auto res = cli.Get("/api/timeline?q=world+trade+center&model=TEMPORAL_DIV&k=2");
        REQUIRE(res);
        CHECK(res->status == 200);
        auto j = json::parse(res->body);
        CHECK(j["top_placements"].size() == 2);
        auto none = json::parse(cli.Get("/api/timeline?q=police&entity=E:WTC")->body);
        CHECK(none["no_data"] == true);
    }
    SUBCASE("entities") {
        auto j = json::parse(cli.Get("/api/entities?q=police+new+york")->body);
        std::set<std::string> ids;
        for (const auto& e : j) ids.insert(e["entity_id"].get<std::string>());
        CHECK(ids.count("E:Giuliani") == 1);
        CHECK(j.size() <= 10);
        CHECK(cli.Get("/api/entities?q=police&model=BEST")->status == 400);
        CHECK(json::parse(cli.Get("/api/entities?q=police&entity=E:WTC")->body).empty());
    }
    SUBCASE("document") {
        auto res = cli.Get("/api/document/d1");
        REQUIRE(res);
        CHECK(res->status == 200);
        auto j = json::parse(res->body);
        CHECK(j["salient_entities"][0]["entity_id"] == "E:Giuliani");
        CHECK(cli.Get("/api/document/nope")->status == 404);
    }
    SUBCASE("CORS preflight") {
        auto res = cli.Options("/api/search");
        REQUIRE(res);
        CHECK(res->status == 204);
        CHECK(res->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);
    }
    SUBCASE("identical requests give identical bodies, also concurrently") {
        const std::string body = R"({"q":"police new york","model":"HIST_DIV"})";
        const auto first = cli.Post("/api/search", body, "application/json")->body;
        std::vector<std::future<std::string>> futures;
        for (int i = 0; i < 8; ++i) {
            futures.push_back(std::async(std::launch::async, [&] {
                httplib::Client c("127.0.0.1", srv.port);
                return c.Post("/api/search", body, "application/json")->body;
            }));
        }
        for (auto& f : futures) CHECK(f.get() == first);
    }
}
