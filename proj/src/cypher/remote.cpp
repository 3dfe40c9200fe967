// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/remote.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "iyp/common/url.hpp"
#include "iyp/cypher/read_only.hpp"

namespace iyp::cypher {

namespace {

using nlohmann::json;

Value cell_from_json(const json& j, const json* meta) {
    if (j.is_object()) {
        Entity e;
        for (const auto& [k, v] : j.items()) {
            if (v.is_primitive()) {
                e.properties.emplace(k, graph::value_from_json(v));
            } else {
                e.properties.emplace(k, v.dump());
            }
        }
        if (meta != nullptr && meta->is_object()) {
            if (meta->value("type", std::string{}) == "relationship") {
                e.kind = EntityKind::edge;
            }
            if (const auto id = meta->find("id"); id != meta->end() && id->is_number_integer()) {
                e.id = id->get<std::uint64_t>();
            }
        }
        return e;
    }
    if (j.is_array()) {
        return PropertyValue{j.dump()};
    }
    return graph::value_from_json(j);
}

}  // namespace

json transaction_request_body(std::string_view query_text) {
    return json{{"statements", json::array({json{{"statement", std::string(query_text)}}})}};
}

RowSet parse_transaction_response(const json& body) {
    if (!body.is_object()) {
        throw RemoteError(RemoteError::Kind::protocol, "transaction response is not an object");
    }
    if (const auto errors = body.find("errors"); errors != body.end() && errors->is_array() &&
                                                 !errors->empty()) {
        const json& first = errors->front();
        std::string message = first.is_object() ? first.value("message", first.dump()) : first.dump();
        throw RemoteError(RemoteError::Kind::query, message);
    }
    const auto results = body.find("results");
    if (results == body.end() || !results->is_array() || results->empty()) {
        throw RemoteError(RemoteError::Kind::protocol, "transaction response has no results");
    }
    const json& result = results->front();
    RowSet out;
    try {
        out.columns = result.at("columns").get<std::vector<std::string>>();
        for (const auto& entry : result.value("data", json::array())) {
            const json& row = entry.at("row");
            const json* meta = entry.contains("meta") ? &entry.at("meta") : nullptr;
            if (!row.is_array() || row.size() != out.columns.size()) {
                throw RemoteError(RemoteError::Kind::protocol,
                                  "row width does not match the column count");
            }
            std::vector<Value> cells;
            for (std::size_t i = 0; i < row.size(); ++i) {
                const json* cell_meta =
                    meta && meta->is_array() && i < meta->size() ? &(*meta)[i] : nullptr;
                cells.push_back(cell_from_json(row[i], cell_meta));
            }
            out.rows.push_back(std::move(cells));
        }
    } catch (const json::exception& e) {
        throw RemoteError(RemoteError::Kind::protocol,
                          std::string("malformed transaction response: ") + e.what());
    }
    return out;
}

RowSet execute_remote(std::string_view query_text, const RemoteEndpointConfig& endpoint) {
    require_read_only(query_text);
    BaseUrl base;
    try {
        base = parse_base_url(endpoint.url);
    } catch (const std::invalid_argument& e) {
        throw RemoteError(RemoteError::Kind::network, e.what());
    }
    httplib::Client client(base.scheme_host_port);
    client.set_connection_timeout(endpoint.timeout);
    client.set_read_timeout(endpoint.timeout);
    client.set_write_timeout(endpoint.timeout);
    if (!endpoint.bearer_token.empty()) {
        client.set_bearer_token_auth(endpoint.bearer_token);
    } else if (!endpoint.username.empty()) {
        client.set_basic_auth(endpoint.username, endpoint.password);
    }
    const std::string path = base.join("/db/" + endpoint.database + "/tx/commit");
    httplib::Headers headers{{"Accept", "application/json;charset=UTF-8"}};
    const auto res = client.Post(path, headers, transaction_request_body(query_text).dump(),
                                 "application/json");
    if (!res) {
        const auto err = res.error();
        const bool timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
        throw RemoteError(timed_out ? RemoteError::Kind::timeout : RemoteError::Kind::network,
                          "graph database request failed: " + httplib::to_string(err));
    }
    if (res->status < 200 || res->status >= 300) {
        throw RemoteError(RemoteError::Kind::http_status,
                          "graph database returned HTTP " + std::to_string(res->status) + ": " +
                              res->body.substr(0, 512),
                          res->status);
    }
    json body;
    try {
        body = json::parse(res->body);
    } catch (const json::parse_error& e) {
        throw RemoteError(RemoteError::Kind::protocol,
                          std::string("response is not JSON: ") + e.what());
    }
    return parse_transaction_response(body);
}

}  // namespace iyp::cypher
