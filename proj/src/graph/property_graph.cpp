// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/graph/property_graph.hpp"

#include <algorithm>

#include "iyp/common/hash.hpp"

namespace iyp::graph {

namespace {

std::string with_line(const std::string& message, std::optional<std::size_t> line) {
    if (!line) {
        return message;
    }
    return "line " + std::to_string(*line) + ": " + message;
}

void hash_properties(Fnv1a64& h, const Properties& props) {
    h.update_u64(props.size());
    for (const auto& [key, value] : props) {
        h.update(key).update_u64(static_cast<std::uint64_t>(value.kind()));
        h.update(to_text(value)).update(std::string_view("\0", 1));
    }
}

}  // namespace

GraphError::GraphError(const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(with_line(message, line)), line_(line) {}

bool Node::has_label(std::string_view label) const noexcept {
    return std::binary_search(labels.begin(), labels.end(), label);
}

PropertyGraph PropertyGraph::from_parts(std::vector<Node> nodes, std::vector<Edge> edges) {
    PropertyGraph g;
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });

    for (auto& n : nodes) {
        std::sort(n.labels.begin(), n.labels.end());
        n.labels.erase(std::unique(n.labels.begin(), n.labels.end()), n.labels.end());
        if (n.labels.empty()) {
            throw GraphError("node " + std::to_string(n.id) + " has no labels");
        }
        if (!g.node_index_.emplace(n.id, g.node_index_.size()).second) {
            throw GraphError("duplicate node id " + std::to_string(n.id));
        }
    }
    g.adjacency_.resize(nodes.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (!g.edge_index_.emplace(e.id, i).second) {
            throw GraphError("duplicate edge id " + std::to_string(e.id));
        }
        const auto from = g.node_index_.find(e.from);
        const auto to = g.node_index_.find(e.to);
        if (from == g.node_index_.end() || to == g.node_index_.end()) {
            throw GraphError("edge " + std::to_string(e.id) + " references unknown node " +
                             std::to_string(from == g.node_index_.end() ? e.from : e.to));
        }
        // Edges are visited in id order, so each list comes out sorted.
        g.adjacency_[from->second].push_back(e.id);
        if (!e.is_loop()) {
            g.adjacency_[to->second].push_back(e.id);
        }
    }
    g.nodes_ = std::move(nodes);
    g.edges_ = std::move(edges);
    return g;
}

const Node* PropertyGraph::find_node(NodeId id) const noexcept {
    const auto it = node_index_.find(id);
    return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const Edge* PropertyGraph::find_edge(EdgeId id) const noexcept {
    const auto it = edge_index_.find(id);
    return it == edge_index_.end() ? nullptr : &edges_[it->second];
}

const Node& PropertyGraph::node(NodeId id) const {
    if (const Node* n = find_node(id)) {
        return *n;
    }
    throw GraphError("unknown node id " + std::to_string(id));
}

const Edge& PropertyGraph::edge(EdgeId id) const {
    if (const Edge* e = find_edge(id)) {
        return *e;
    }
    throw GraphError("unknown edge id " + std::to_string(id));
}

std::span<const EdgeId> PropertyGraph::incident_edges(NodeId id) const {
    const auto it = node_index_.find(id);
    if (it == node_index_.end()) {
        throw GraphError("unknown node id " + std::to_string(id));
    }
    return adjacency_[it->second];
}

std::uint64_t PropertyGraph::content_hash() const noexcept {
    Fnv1a64 h;
    h.update_u64(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        h.update_u64(n.id).update_u64(n.labels.size());
        for (const auto& l : n.labels) {
            h.update(l).update(std::string_view("\0", 1));
        }
        hash_properties(h, n.properties);
        h.update_u64(adjacency_[i].size());
        for (EdgeId e : adjacency_[i]) {
            h.update_u64(e);
        }
    }
    h.update_u64(edges_.size());
    for (const Edge& e : edges_) {
        h.update_u64(e.id).update(e.type).update(std::string_view("\0", 1));
        h.update_u64(e.from).update_u64(e.to);
        hash_properties(h, e.properties);
    }
    return h.digest();
}

}  // namespace iyp::graph
