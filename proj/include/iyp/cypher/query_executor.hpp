// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "iyp/cypher/remote.hpp"
#include "iyp/cypher/value.hpp"
#include "iyp/graph/property_graph.hpp"

namespace iyp::cypher {

/// Runs query text somewhere: validate read-only, then execute. Failures
/// throw (SyntaxError, SemanticError, ReadOnlyViolation, QueryError,
/// RemoteError).
class QueryExecutor {
public:
    virtual ~QueryExecutor() = default;
    [[nodiscard]] virtual RowSet run(std::string_view query_text) const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

/// Executes against an in-memory graph; the graph must outlive the executor.
class LocalExecutor final : public QueryExecutor {
public:
    explicit LocalExecutor(const graph::PropertyGraph& graph) : graph_(graph) {}
    [[nodiscard]] RowSet run(std::string_view query_text) const override;
    [[nodiscard]] std::string name() const override { return "local"; }

private:
    const graph::PropertyGraph& graph_;
};

class RemoteExecutor final : public QueryExecutor {
public:
    explicit RemoteExecutor(RemoteEndpointConfig endpoint) : endpoint_(std::move(endpoint)) {}
    [[nodiscard]] RowSet run(std::string_view query_text) const override;
    [[nodiscard]] std::string name() const override { return "remote:" + endpoint_.url; }

private:
    RemoteEndpointConfig endpoint_;
};

}  // namespace iyp::cypher
