// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/graph/loader.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "iyp/common/text.hpp"

namespace iyp::graph {

namespace {

using nlohmann::json;

std::uint64_t read_id(const json& obj, const char* key, std::size_t line) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) {
        throw GraphError(std::string("field '") + key + "' must be a non-negative integer", line);
    }
    return it->get<std::uint64_t>();
}

Properties read_props(const json& obj, std::size_t line) {
    Properties props;
    const auto it = obj.find("props");
    if (it == obj.end() || it->is_null()) {
        return props;
    }
    if (!it->is_object()) {
        throw GraphError("field 'props' must be an object", line);
    }
    for (const auto& [key, value] : it->items()) {
        try {
            props.emplace(key, value_from_json(value));
        } catch (const std::invalid_argument& e) {
            throw GraphError("property '" + key + "': " + e.what(), line);
        }
    }
    return props;
}

}  // namespace

PropertyGraph load_graph(std::istream& in) {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::unordered_map<NodeId, std::size_t> node_lines;
    std::unordered_map<EdgeId, std::size_t> edge_lines;
    std::vector<std::size_t> edge_line_of;

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(raw);
        if (text.empty()) {
            continue;
        }
        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::parse_error& e) {
            throw GraphError(std::string("malformed JSON: ") + e.what(), line);
        }
        if (!obj.is_object()) {
            throw GraphError("expected a JSON object", line);
        }
        const auto kind = obj.value("kind", std::string{});
        if (kind == "node") {
            Node n;
            n.id = read_id(obj, "id", line);
            const auto labels = obj.find("labels");
            if (labels == obj.end() || !labels->is_array() || labels->empty()) {
                throw GraphError("node needs a non-empty 'labels' array", line);
            }
            for (const auto& l : *labels) {
                if (!l.is_string() || l.get<std::string>().empty()) {
                    throw GraphError("labels must be non-empty strings", line);
                }
                n.labels.push_back(l.get<std::string>());
            }
            n.properties = read_props(obj, line);
            if (!node_lines.emplace(n.id, line).second) {
                throw GraphError("duplicate node id " + std::to_string(n.id), line);
            }
            nodes.push_back(std::move(n));
        } else if (kind == "edge") {
            Edge e;
            e.id = read_id(obj, "id", line);
            const auto type = obj.find("type");
            if (type == obj.end() || !type->is_string() || type->get<std::string>().empty()) {
                throw GraphError("edge needs a non-empty 'type' string", line);
            }
            e.type = type->get<std::string>();
            e.from = read_id(obj, "from", line);
            e.to = read_id(obj, "to", line);
            e.properties = read_props(obj, line);
            if (!edge_lines.emplace(e.id, line).second) {
                throw GraphError("duplicate edge id " + std::to_string(e.id), line);
            }
            edges.push_back(std::move(e));
            edge_line_of.push_back(line);
        } else {
            throw GraphError("field 'kind' must be \"node\" or \"edge\"", line);
        }
    }

    // Second pass: endpoints, now that every node is known.
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (NodeId endpoint : {edges[i].from, edges[i].to}) {
            if (!node_lines.contains(endpoint)) {
                throw GraphError("edge " + std::to_string(edges[i].id) +
                                     " references unknown node " + std::to_string(endpoint),
                                 edge_line_of[i]);
            }
        }
    }
    return PropertyGraph::from_parts(std::move(nodes), std::move(edges));
}

PropertyGraph load_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw GraphError("cannot open graph dump " + path.string());
    }
    return load_graph(in);
}

void write_graph(const PropertyGraph& graph, std::ostream& out) {
    auto props_json = [](const Properties& props) {
        json j = json::object();
        for (const auto& [k, v] : props) {
            j[k] = to_json(v);
        }
        return j;
    };
    for (const Node& n : graph.nodes()) {
        out << json{{"kind", "node"}, {"id", n.id}, {"labels", n.labels},
                    {"props", props_json(n.properties)}}
                   .dump()
            << '\n';
    }
    for (const Edge& e : graph.edges()) {
        out << json{{"kind", "edge"}, {"id", e.id},     {"type", e.type},
                    {"from", e.from}, {"to", e.to}, {"props", props_json(e.properties)}}
                   .dump()
            << '\n';
    }
}

}  // namespace iyp::graph
