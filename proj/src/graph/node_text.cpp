// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/graph/node_text.hpp"

#include "iyp/common/text.hpp"

namespace iyp::graph {

std::string node_text(const PropertyGraph& graph, NodeId id, bool include_neighbors) {
    const Node& n = graph.node(id);
    std::string out = join(n.labels, ",");
    out += " | ";
    bool first = true;
    for (const auto& [key, value] : n.properties) {
        if (!first) {
            out += "; ";
        }
        first = false;
        out += key;
        out += '=';
        out += to_text(value);
    }
    if (include_neighbors) {
        for (EdgeId eid : graph.incident_edges(id)) {
            const Edge& e = graph.edge(eid);
            out += " | rel: ";
            out += e.type;
            out += "->";
            out += join(graph.node(e.other_end(id)).labels, ",");
        }
    }
    return out;
}

}  // namespace iyp::graph
