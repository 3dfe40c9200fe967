// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iyp/graph/value.hpp"

namespace iyp::cypher {

using graph::PropertyValue;

enum class EntityKind { node, edge };

/// A node or relationship returned by a query, with a snapshot of its
/// labels (edge: the single type) and properties. Identity is (kind, id).
struct Entity {
    EntityKind kind = EntityKind::node;
    std::uint64_t id = 0;
    std::vector<std::string> labels;
    graph::Properties properties;

    friend bool operator==(const Entity& a, const Entity& b) noexcept {
        return a.kind == b.kind && a.id == b.id;
    }
};

/// One result cell: a scalar property value or a whole entity.
using Value = std::variant<PropertyValue, Entity>;

[[nodiscard]] inline bool is_null(const Value& v) noexcept {
    const auto* p = std::get_if<PropertyValue>(&v);
    return p != nullptr && p->is_null();
}

/// Sorting/grouping order: scalars by graph::total_less (null excluded),
/// then nodes, then edges (by id), then null.
[[nodiscard]] bool total_less(const Value& a, const Value& b) noexcept;
[[nodiscard]] bool total_equal(const Value& a, const Value& b) noexcept;

/// Scalars as graph::to_text; nodes "(:AS {asn: 2497})"; edges
/// "[:POPULATION {percent: 52.0}]".
[[nodiscard]] std::string to_text(const Value& v);
[[nodiscard]] nlohmann::json to_json(const Value& v);

struct RowSet {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

[[nodiscard]] nlohmann::json to_json(const RowSet& rows);

}  // namespace iyp::cypher
