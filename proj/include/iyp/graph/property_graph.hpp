// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iyp/graph/value.hpp"

namespace iyp::graph {

using NodeId = std::uint64_t;
using EdgeId = std::uint64_t;

struct Node {
    NodeId id = 0;
    std::vector<std::string> labels;  // sorted, unique, non-empty
    Properties properties;

    [[nodiscard]] bool has_label(std::string_view label) const noexcept;
    friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
    EdgeId id = 0;
    std::string type;
    NodeId from = 0;
    NodeId to = 0;
    Properties properties;

    [[nodiscard]] bool is_loop() const noexcept { return from == to; }
    [[nodiscard]] NodeId other_end(NodeId endpoint) const noexcept {
        return endpoint == from ? to : from;
    }
    friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& message, std::optional<std::size_t> line = std::nullopt);
    [[nodiscard]] std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

/// Immutable labeled property graph. Nodes and edges are kept sorted by id,
/// and every node carries the ids of its incident edges (both directions,
/// a self-loop listed once) in ascending order.
class PropertyGraph {
public:
    PropertyGraph() = default;

    /// Validates unique ids, non-empty labels and edge endpoints.
    [[nodiscard]] static PropertyGraph from_parts(std::vector<Node> nodes, std::vector<Edge> edges);

    [[nodiscard]] std::span<const Node> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }

    [[nodiscard]] const Node* find_node(NodeId id) const noexcept;
    [[nodiscard]] const Edge* find_edge(EdgeId id) const noexcept;
    /// Throws GraphError for unknown ids.
    [[nodiscard]] const Node& node(NodeId id) const;
    [[nodiscard]] const Edge& edge(EdgeId id) const;
    [[nodiscard]] std::span<const EdgeId> incident_edges(NodeId id) const;

    /// Order-independent over construction input; covers ids, labels,
    /// types, endpoints, properties (kind-sensitive) and adjacency.
    [[nodiscard]] std::uint64_t content_hash() const noexcept;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> adjacency_;  // parallel to nodes_
    std::unordered_map<NodeId, std::size_t> node_index_;
    std::unordered_map<EdgeId, std::size_t> edge_index_;
};

}  // namespace iyp::graph
