// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "iyp/service/pipeline.hpp"

namespace iyp::service {

struct HttpResponse {
    int status = 200;
    nlohmann::json body;
};

/// The HTTP API without the transport, so every handler is testable
/// directly. Not ready (503) until a pipeline is attached.
class Service {
public:
    explicit Service(ServiceSettings settings, std::string version);

    void set_pipeline(std::shared_ptr<const Pipeline> pipeline);
    [[nodiscard]] bool ready() const;

    /// POST /api/ask with a raw request body.
    [[nodiscard]] HttpResponse handle_ask(std::string_view body) const;
    [[nodiscard]] HttpResponse handle_ask(const nlohmann::json& request) const;
    [[nodiscard]] HttpResponse handle_health() const;
    [[nodiscard]] HttpResponse handle_schema() const;

    [[nodiscard]] const ServiceSettings& settings() const noexcept { return settings_; }

private:
    [[nodiscard]] std::shared_ptr<const Pipeline> pipeline() const;
    [[nodiscard]] std::string next_request_id() const;

    ServiceSettings settings_;
    std::string version_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Pipeline> pipeline_;
    std::uint64_t nonce_;
    mutable std::atomic<std::uint64_t> counter_{0};
};

/// JSON form of an ask result; request_id is added by the caller.
[[nodiscard]] nlohmann::json ask_response_json(const AskResult& result);

/// Version string reported by health and the CLI.
[[nodiscard]] std::string version();

/// Serves the routes (with CORS) until stop() is called from another thread.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds; port 0 picks a free port. Returns the bound port. Throws on failure.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void listen();
    /// Returns once listen() is accepting connections.
    void wait_until_ready() const;
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace iyp::service
