// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/graph/schema.hpp"

#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "iyp/common/text.hpp"

namespace iyp::graph {

SchemaCatalog schema_catalog(const PropertyGraph& graph) {
    std::set<std::string> labels;
    std::set<std::string> types;
    std::map<std::string, std::set<std::string>> keys;
    std::set<std::string> patterns;

    for (const Node& n : graph.nodes()) {
        for (const auto& l : n.labels) {
            labels.insert(l);
            auto& slot = keys[l];
            for (const auto& [k, v] : n.properties) {
                slot.insert(k);
            }
        }
    }
    for (const Edge& e : graph.edges()) {
        types.insert(e.type);
        auto& slot = keys[e.type];
        for (const auto& [k, v] : e.properties) {
            slot.insert(k);
        }
        for (const auto& fl : graph.node(e.from).labels) {
            for (const auto& tl : graph.node(e.to).labels) {
                patterns.insert("(:" + fl + ")-[:" + e.type + "]->(:" + tl + ")");
            }
        }
    }

    SchemaCatalog out;
    out.labels.assign(labels.begin(), labels.end());
    out.relationship_types.assign(types.begin(), types.end());
    for (auto& [name, set] : keys) {
        out.property_keys.emplace(name, std::vector<std::string>(set.begin(), set.end()));
    }
    out.relationship_patterns.assign(patterns.begin(), patterns.end());
    return out;
}

nlohmann::json to_json(const SchemaCatalog& schema) {
    return nlohmann::json{{"labels", schema.labels},
                          {"relationship_types", schema.relationship_types},
                          {"property_keys", schema.property_keys},
                          {"relationship_patterns", schema.relationship_patterns}};
}

SchemaCatalog schema_from_json(const nlohmann::json& j) {
    SchemaCatalog out;
    out.labels = j.value("labels", std::vector<std::string>{});
    out.relationship_types = j.value("relationship_types", std::vector<std::string>{});
    out.property_keys =
        j.value("property_keys", std::map<std::string, std::vector<std::string>>{});
    out.relationship_patterns = j.value("relationship_patterns", std::vector<std::string>{});
    return out;
}

std::string describe(const SchemaCatalog& schema) {
    std::ostringstream out;
    out << "Node labels:\n";
    for (const auto& l : schema.labels) {
        out << "  :" << l;
        if (const auto it = schema.property_keys.find(l); it != schema.property_keys.end()) {
            out << " {" << join(it->second, ", ") << "}";
        }
        out << '\n';
    }
    out << "Relationship types:\n";
    for (const auto& t : schema.relationship_types) {
        out << "  :" << t;
        if (const auto it = schema.property_keys.find(t);
            it != schema.property_keys.end() && !it->second.empty()) {
            out << " {" << join(it->second, ", ") << "}";
        }
        out << '\n';
    }
    if (!schema.relationship_patterns.empty()) {
        out << "Patterns:\n";
        for (const auto& p : schema.relationship_patterns) {
            out << "  " << p << '\n';
        }
    }
    return out.str();
}

}  // namespace iyp::graph
