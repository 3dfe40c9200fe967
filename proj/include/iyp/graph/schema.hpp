// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iyp/graph/property_graph.hpp"

namespace iyp::graph {

/// What a graph contains, in sorted order: labels, relationship types, the
/// property keys observed per label/type, and the (label)-[type]->(label)
/// shapes that actually occur.
struct SchemaCatalog {
    std::vector<std::string> labels;
    std::vector<std::string> relationship_types;
    std::map<std::string, std::vector<std::string>> property_keys;
    std::vector<std::string> relationship_patterns;

    [[nodiscard]] bool empty() const noexcept {
        return labels.empty() && relationship_types.empty();
    }
    friend bool operator==(const SchemaCatalog&, const SchemaCatalog&) = default;
};

[[nodiscard]] SchemaCatalog schema_catalog(const PropertyGraph& graph);

[[nodiscard]] nlohmann::json to_json(const SchemaCatalog& schema);
[[nodiscard]] SchemaCatalog schema_from_json(const nlohmann::json& j);

/// Compact multi-line description used in prompts.
[[nodiscard]] std::string describe(const SchemaCatalog& schema);

}  // namespace iyp::graph
