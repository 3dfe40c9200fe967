// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/service/service.hpp"

#include <cstdio>
#include <limits>
#include <random>

#include <httplib.h>

#include "iyp/common/text.hpp"

#ifndef IYP_VERSION
#define IYP_VERSION "0.0.0"
#endif

namespace iyp::service {

using nlohmann::json;

std::string version() {
    return IYP_VERSION;
}

namespace {

HttpResponse error(int status, const std::string& message) {
    return {status, {{"error", message}}};
}

std::uint64_t random_nonce() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

json ask_response_json(const AskResult& result) {
    json context = json::array();
    for (const auto& c : result.retrieval.candidates) {
        context.push_back({{"source", retrieval::to_string(c.source)}, {"text", c.text}, {"score", c.score}});
    }
    json path = json::array();
    for (const auto s : result.retrieval.path) {
        path.push_back(retrieval::to_string(s));
    }
    json diagnostics = json::array();
    for (const auto& d : result.retrieval.diagnostics) {
        diagnostics.push_back({{"stage", retrieval::to_string(d.stage)}, {"message", d.message}});
    }
    json timings = json::object();
    for (const auto& [stage, ms] : result.retrieval.timings_ms) {
        timings[stage] = ms;
    }
    timings["synthesize"] = result.synthesize_ms;
    timings["total"] = result.total_ms;
    const auto cypher = result.cypher();
    return {{"answer", result.answer.text},
            {"cypher", cypher ? json(*cypher) : json(nullptr)},
            {"context", std::move(context)},
            {"path", std::move(path)},
            {"diagnostics", std::move(diagnostics)},
            {"timings", std::move(timings)}};
}

Service::Service(ServiceSettings settings, std::string version)
    : settings_(std::move(settings)), version_(std::move(version)), nonce_(random_nonce()) {}

void Service::set_pipeline(std::shared_ptr<const Pipeline> pipeline) {
    std::lock_guard lock(mutex_);
    pipeline_ = std::move(pipeline);
}

std::shared_ptr<const Pipeline> Service::pipeline() const {
    std::lock_guard lock(mutex_);
    return pipeline_;
}

bool Service::ready() const {
    return pipeline() != nullptr;
}

std::string Service::next_request_id() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%016llx-%08llx", static_cast<unsigned long long>(nonce_),
                  static_cast<unsigned long long>(counter_.fetch_add(1) + 1));
    return buf;
}

HttpResponse Service::handle_ask(std::string_view body) const {
    const json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) {
        return error(400, "request body is not valid JSON");
    }
    return handle_ask(j);
}

HttpResponse Service::handle_ask(const json& request) const {
    const auto p = pipeline();
    if (!p) {
        return {503, {{"error", "service is loading"}, {"status", "loading"}}};
    }
    if (!request.is_object()) {
        return error(400, "request must be a JSON object");
    }
    const auto q = request.find("question");
    if (q == request.end() || !q->is_string()) {
        return error(400, "\"question\" must be a string");
    }
    const std::string question(trim(q->get_ref<const std::string&>()));
    if (question.empty()) {
        return error(400, "\"question\" must not be empty");
    }
    for (const auto& [key, value] : request.items()) {
        if (key != "question" && key != "options") {
            return error(400, "unknown request field \"" + key + "\"");
        }
    }
    retrieval::RetrievalConfig rc = p->config().retrieval;
    if (const auto o = request.find("options"); o != request.end() && !o->is_null()) {
        if (!o->is_object()) {
            return error(400, "\"options\" must be an object");
        }
        for (const auto& [key, value] : o->items()) {
            std::size_t max = 0;
            std::size_t* target = nullptr;
            if (key == "k") {
                target = &rc.k;
                max = settings_.max_k;
            } else if (key == "top_n") {
                target = &rc.top_n;
                max = settings_.max_top_n;
            } else if (key == "min_rows") {
                target = &rc.min_rows;
                max = static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max());
            } else {
                return error(400, "unknown option \"" + key + "\" (k, min_rows, top_n)");
            }
            if (!value.is_number_integer() || value.get<std::int64_t>() < 1 ||
                static_cast<std::uint64_t>(value.get<std::int64_t>()) > max) {
                return error(400, "option \"" + key + "\" must be an integer in [1, " + std::to_string(max) + "]");
            }
            *target = static_cast<std::size_t>(value.get<std::int64_t>());
        }
    }
    const std::string request_id = next_request_id();
    try {
        json body = ask_response_json(p->ask(question, rc));
        body["request_id"] = request_id;
        return {200, std::move(body)};
    } catch (const UpstreamError& e) {
        return {502, {{"error", e.what()}, {"stage", e.stage()}, {"request_id", request_id}}};
    } catch (const std::exception& e) {
        return {500, {{"error", e.what()}, {"request_id", request_id}}};
    }
}

HttpResponse Service::handle_health() const {
    const auto p = pipeline();
    if (!p) {
        return {503, {{"status", "loading"}}};
    }
    return {200,
            {{"status", "ok"},
             {"graph_nodes", p->graph_nodes()},
             {"index_entries", p->index().size()},
             {"version", version_}}};
}

HttpResponse Service::handle_schema() const {
    const auto p = pipeline();
    if (!p) {
        return {503, {{"status", "loading"}}};
    }
    return {200, graph::to_json(p->schema())};
}

struct HttpServer::Impl {
    Service& service;
    httplib::Server server;
    explicit Impl(Service& s) : service(s) {}
};

namespace {

void send(httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
    auto& svr = impl_->server;
    const ServiceSettings& s = service.settings();
    const std::size_t workers = s.max_concurrent;
    svr.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(s.request_timeout).count();
    svr.set_read_timeout(secs, 0);
    svr.set_write_timeout(secs, 0);
    svr.set_payload_max_length(1 << 20);
    const std::string origin = s.cors_origin;
    svr.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Vary", "Origin");
    });
    svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.set_header("Access-Control-Max-Age", "600");
    });
    Service* svc = &service;
    svr.Post("/api/ask", [svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc->handle_ask(std::string_view(req.body)));
    });
    svr.Get("/api/health", [svc](const httplib::Request&, httplib::Response& res) { send(res, svc->handle_health()); });
    svr.Get("/api/schema", [svc](const httplib::Request&, httplib::Response& res) { send(res, svc->handle_schema()); });
}

HttpServer::~HttpServer() {
    stop();
}

int HttpServer::bind(const std::string& host, int port) {
    auto& svr = impl_->server;
    if (port == 0) {
        const int bound = svr.bind_to_any_port(host);
        if (bound < 0) {
            throw std::runtime_error("cannot bind " + host);
        }
        return bound;
    }
    if (!svr.bind_to_port(host, port)) {
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    return port;
}

void HttpServer::listen() {
    impl_->server.listen_after_bind();
}

void HttpServer::wait_until_ready() const {
    impl_->server.wait_until_ready();
}

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) {
        impl_->server.stop();
    }
}

}  // namespace iyp::service
