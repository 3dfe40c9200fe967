// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/retrieval/candidate.hpp"

#include <nlohmann/json.hpp>

namespace iyp::retrieval {

using nlohmann::json;

StageError::StageError(Stage stage, const std::string& message)
    : std::runtime_error(std::string(to_string(stage)) + ": " + message), stage_(stage) {}

std::string_view to_string(Source source) noexcept {
    return source == Source::cypher ? "cypher" : "vector";
}

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
        case Stage::text_to_cypher: return "text_to_cypher";
        case Stage::vector_fallback: return "vector_fallback";
        case Stage::rerank: return "rerank";
    }
    return "text_to_cypher";
}

json to_json(const RetrievalCandidate& c) {
    json j{{"source", std::string(to_string(c.source))}, {"text", c.text}, {"score", c.score}};
    if (const auto* p = std::get_if<CypherProvenance>(&c.provenance)) {
        j["provenance"] = {{"query", p->query}, {"row", p->row}};
    } else {
        const auto& v = std::get<VectorProvenance>(c.provenance);
        j["provenance"] = {{"node_id", v.node_id}, {"similarity", v.similarity}};
    }
    if (c.relevance) {
        j["relevance"] = *c.relevance;
    }
    return j;
}

json to_json(const RetrievalResult& r) {
    json candidates = json::array();
    for (const auto& c : r.candidates) {
        candidates.push_back(to_json(c));
    }
    json path = json::array();
    for (const auto s : r.path) {
        path.push_back(std::string(to_string(s)));
    }
    json diagnostics = json::array();
    for (const auto& d : r.diagnostics) {
        diagnostics.push_back({{"stage", std::string(to_string(d.stage))}, {"message", d.message}});
    }
    return {{"candidates", std::move(candidates)},
            {"executed_cypher", r.executed_cypher ? json(*r.executed_cypher) : json(nullptr)},
            {"path", std::move(path)},
            {"diagnostics", std::move(diagnostics)}};
}

}  // namespace iyp::retrieval
