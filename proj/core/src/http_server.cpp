#include "picolit/http_server.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace picolit {

namespace {

constexpr const char* kJson = "application/json";

ParamMap query_params(const httplib::Request& req)
{
    ParamMap out;
    for (const auto& [key, value] : req.params) {
        out.emplace(key, value);
    }
    return out;
}

void send_error(httplib::Response& res, const ServiceError& e)
{
    res.status = e.status();
    res.set_content(error_json(e).dump(), kJson);
}

template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler)
{
    try {
        handler();
    } catch (const ServiceError& e) {
        send_error(res, e);
    } catch (const std::invalid_argument& e) {
        send_error(res, ServiceError(400, "bad_request", e.what()));
    } catch (const std::exception& e) {
        send_error(res, ServiceError(500, "internal", e.what()));
    }
}

std::size_t count_param(const ParamMap& params, const std::string& key, std::size_t fallback)
{
    auto it = params.find(key);
    if (it == params.end() || it->second.empty()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        auto value = std::stoull(it->second, &used);
        if (used != it->second.size() || it->second.front() == '-') {
            throw std::invalid_argument(key);
        }
        return static_cast<std::size_t>(value);
    } catch (const std::logic_error&) {
        throw ServiceError(400, "bad_request", "parameter '" + key + "' must be a non-negative integer");
    }
}

}  // namespace

struct HttpServer::Impl {
    Service& service;
    httplib::Server server;

    explicit Impl(Service& s) : service(s)
    {
        server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
            const bool ok = service.ready();
            res.status = ok ? 200 : 503;
            res.set_content(nlohmann::json{{"status", ok ? "ok" : "unavailable"}}.dump(), kJson);
        });

        server.Get("/topics", [this](const httplib::Request&, httplib::Response& res) {
            guarded(res, [&] {
                nlohmann::json topics = nlohmann::json::array();
                for (const auto& t : service.topics()) {
                    topics.push_back({{"number", t.topic_id},
                                      {"query", t.query},
                                      {"question", t.question},
                                      {"narrative", t.narrative}});
                }
                res.set_content(topics.dump(), kJson);
            });
        });

        server.Get("/search", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                auto params = parse_search_params(query_params(req));
                res.set_content(to_json(service.search(params)).dump(), kJson);
            });
        });

        server.Get("/relation-docs", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                auto map = query_params(req);
                auto params = parse_search_params(map);
                auto source = map.find("source");
                auto target = map.find("target");
                if (source == map.end() || target == map.end()) {
                    throw ServiceError(400, "bad_request", "source and target are required");
                }
                std::optional<std::string> topic;
                if (auto it = map.find("topic"); it != map.end() && !it->second.empty()) {
                    topic = it->second;
                }
                auto page = service.relation_docs(params, source->second, target->second,
                                                  count_param(map, "offset", 0),
                                                  count_param(map, "limit", kDefaultPageLimit), topic);
                res.set_content(to_json(page).dump(), kJson);
            });
        });

        server.Post("/eval", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                auto body = nlohmann::json::parse(req.body, nullptr, false);
                if (body.is_discarded()) {
                    throw ServiceError(400, "bad_request", "body is not valid JSON");
                }
                auto report = service.eval(parse_eval_request(body));
                res.set_content(to_json(report).dump(), kJson);
            });
        });
    }
};

HttpServer::HttpServer(Service& service) : m_impl(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer()
{
    stop();
}

bool HttpServer::listen(const std::string& host, int port)
{
    return m_impl->server.listen(host, port);
}

int HttpServer::bind_any_port(const std::string& host)
{
    return m_impl->server.bind_to_any_port(host);
}

bool HttpServer::serve()
{
    return m_impl->server.listen_after_bind();
}

void HttpServer::stop()
{
    if (m_impl) {
        m_impl->server.stop();
    }
}

bool HttpServer::running() const
{
    return m_impl->server.is_running();
}

}  // namespace picolit
