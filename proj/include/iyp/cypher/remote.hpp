// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "iyp/cypher/value.hpp"

namespace iyp::cypher {

/// A graph database reachable over its HTTP transactional endpoint.
struct RemoteEndpointConfig {
    std::string url;  // e.g. http://localhost:7474
    std::string database = "neo4j";
    std::string bearer_token;  // takes precedence over basic auth
    std::string username;
    std::string password;
    std::chrono::milliseconds timeout{10'000};
};

class RemoteError : public std::runtime_error {
public:
    enum class Kind { network, timeout, http_status, query, protocol };

    RemoteError(Kind kind, const std::string& message, int status = 0)
        : std::runtime_error(message), kind_(kind), status_(status) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] int status() const noexcept { return status_; }

private:
    Kind kind_;
    int status_;
};

/// POSTs {"statements":[{"statement": query}]} to
/// {url}/db/{database}/tx/commit and maps the first result into a RowSet.
/// The query must pass validate_read_only (ReadOnlyViolation otherwise).
[[nodiscard]] RowSet execute_remote(std::string_view query_text, const RemoteEndpointConfig& endpoint);

/// Response body mapping, separated for testing. A non-empty "errors" array
/// raises RemoteError(query) carrying the first message verbatim.
[[nodiscard]] RowSet parse_transaction_response(const nlohmann::json& body);

[[nodiscard]] nlohmann::json transaction_request_body(std::string_view query_text);

}  // namespace iyp::cypher
