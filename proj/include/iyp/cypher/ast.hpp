// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iyp/graph/value.hpp"

namespace iyp::cypher {

using graph::PropertyValue;

/// Inline `{key: literal, ...}` map, in source order.
using PropertyMap = std::vector<std::pair<std::string, PropertyValue>>;

struct NodePattern {
    std::optional<std::string> variable;
    std::vector<std::string> labels;  // all must be present on the node
    PropertyMap properties;
    friend bool operator==(const NodePattern&, const NodePattern&) = default;
};

enum class Direction { undirected, right, left };

struct RelPattern {
    std::optional<std::string> variable;
    std::optional<std::string> type;
    PropertyMap properties;
    Direction direction = Direction::undirected;
    friend bool operator==(const RelPattern&, const RelPattern&) = default;
};

/// node (rel node)*; nodes.size() == rels.size() + 1 always.
struct PathPattern {
    std::vector<NodePattern> nodes;
    std::vector<RelPattern> rels;
    friend bool operator==(const PathPattern&, const PathPattern&) = default;
};

struct VariableRef {
    std::string name;
    friend bool operator==(const VariableRef&, const VariableRef&) = default;
};

struct PropertyRef {
    std::string variable;
    std::string key;
    friend bool operator==(const PropertyRef&, const PropertyRef&) = default;
};

enum class AggregateFn { count, sum, avg, min, max };

struct Aggregate {
    AggregateFn fn = AggregateFn::count;
    bool distinct = false;
    /// nullopt is `*`, only valid for count.
    std::optional<std::variant<VariableRef, PropertyRef>> argument;
    friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

using Projection = std::variant<VariableRef, PropertyRef, Aggregate>;

using Operand = std::variant<PropertyValue, VariableRef, PropertyRef>;

enum class CompareOp { eq, ne, lt, le, gt, ge };

/// WHERE expression tree. Children are only used by and/or/not.
struct BoolExpr {
    enum class Kind { conjunction, disjunction, negation, comparison, null_check, operand };

    Kind kind = Kind::operand;
    std::vector<BoolExpr> children;  // conjunction/disjunction: >= 2, negation: 1
    Operand lhs;                     // comparison, null_check, operand
    CompareOp op = CompareOp::eq;    // comparison
    Operand rhs;                     // comparison
    bool negated = false;            // null_check: IS NOT NULL

    friend bool operator==(const BoolExpr&, const BoolExpr&) = default;
};

struct ReturnItem {
    Projection projection;
    std::optional<std::string> alias;
    friend bool operator==(const ReturnItem&, const ReturnItem&) = default;
};

struct SortItem {
    Projection projection;  // a bare VariableRef may name a RETURN alias
    bool descending = false;
    friend bool operator==(const SortItem&, const SortItem&) = default;
};

struct Query {
    std::vector<PathPattern> patterns;
    std::optional<BoolExpr> where;
    bool distinct = false;
    std::vector<ReturnItem> returns;
    std::vector<SortItem> order_by;
    std::optional<std::uint64_t> limit;
    friend bool operator==(const Query&, const Query&) = default;
};

[[nodiscard]] inline bool is_aggregate(const Projection& p) noexcept {
    return std::holds_alternative<Aggregate>(p);
}

[[nodiscard]] std::string_view aggregate_name(AggregateFn fn) noexcept;

}  // namespace iyp::cypher
