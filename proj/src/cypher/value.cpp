// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/value.hpp"

#include <nlohmann/json.hpp>

#include "iyp/common/text.hpp"

namespace iyp::cypher {

namespace {

int rank(const Value& v) noexcept {
    if (const auto* p = std::get_if<PropertyValue>(&v)) {
        return p->is_null() ? 3 : 0;
    }
    return std::get<Entity>(v).kind == EntityKind::node ? 1 : 2;
}

std::string entity_text(const Entity& e) {
    std::string out = e.kind == EntityKind::node ? "(" : "[";
    for (const auto& l : e.labels) {
        out += ':';
        out += l;
    }
    if (!e.properties.empty()) {
        out += out.size() > 1 ? " {" : "{";
        bool first = true;
        for (const auto& [k, v] : e.properties) {
            if (!first) {
                out += ", ";
            }
            first = false;
            out += k + ": " + graph::to_cypher_literal(v);
        }
        out += '}';
    }
    out += e.kind == EntityKind::node ? ")" : "]";
    return out;
}

}  // namespace

bool total_less(const Value& a, const Value& b) noexcept {
    const int ra = rank(a);
    const int rb = rank(b);
    if (ra != rb) {
        return ra < rb;
    }
    if (ra == 0) {
        return graph::total_less(std::get<PropertyValue>(a), std::get<PropertyValue>(b));
    }
    if (ra == 3) {
        return false;
    }
    return std::get<Entity>(a).id < std::get<Entity>(b).id;
}

bool total_equal(const Value& a, const Value& b) noexcept {
    return !total_less(a, b) && !total_less(b, a);
}

std::string to_text(const Value& v) {
    if (const auto* p = std::get_if<PropertyValue>(&v)) {
        return graph::to_text(*p);
    }
    return entity_text(std::get<Entity>(v));
}

nlohmann::json to_json(const Value& v) {
    if (const auto* p = std::get_if<PropertyValue>(&v)) {
        return graph::to_json(*p);
    }
    const auto& e = std::get<Entity>(v);
    nlohmann::json props = nlohmann::json::object();
    for (const auto& [k, val] : e.properties) {
        props[k] = graph::to_json(val);
    }
    nlohmann::json out{{"id", e.id}, {"properties", props}};
    if (e.kind == EntityKind::node) {
        out["labels"] = e.labels;
    } else {
        out["type"] = e.labels.empty() ? std::string{} : e.labels.front();
    }
    return out;
}

nlohmann::json to_json(const RowSet& rows) {
    nlohmann::json data = nlohmann::json::array();
    for (const auto& row : rows.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) {
            r.push_back(to_json(cell));
        }
        data.push_back(std::move(r));
    }
    return nlohmann::json{{"columns", rows.columns}, {"rows", data}};
}

}  // namespace iyp::cypher
