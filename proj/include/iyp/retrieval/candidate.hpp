// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iyp/graph/property_graph.hpp"

namespace iyp::retrieval {

enum class Source { cypher, vector };

struct CypherProvenance {
    std::string query;
    std::size_t row = 0;
    friend bool operator==(const CypherProvenance&, const CypherProvenance&) = default;
};

struct VectorProvenance {
    graph::NodeId node_id = 0;
    double similarity = 0.0;
    friend bool operator==(const VectorProvenance&, const VectorProvenance&) = default;
};

/// One unit of retrieved context.
struct RetrievalCandidate {
    Source source = Source::cypher;
    std::string text;
    double score = 0.0;  // 1.0 for Cypher rows, cosine for vector hits
    std::variant<CypherProvenance, VectorProvenance> provenance;
    std::optional<int> relevance;  // set once reranked (0-10)
    friend bool operator==(const RetrievalCandidate&, const RetrievalCandidate&) = default;
};

enum class Stage { text_to_cypher, vector_fallback, rerank };

struct Diagnostic {
    Stage stage = Stage::text_to_cypher;
    std::string message;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct RetrievalResult {
    std::vector<RetrievalCandidate> candidates;
    /// The query text that ran successfully, even when it returned no rows.
    std::optional<std::string> executed_cypher;
    std::vector<Stage> path;  // stages that ran, in order
    std::vector<Diagnostic> diagnostics;
    std::map<std::string, double> timings_ms;  // per stage tag
};

/// A provider failure inside a retrieval stage.
class StageError : public std::runtime_error {
public:
    StageError(Stage stage, const std::string& message);
    [[nodiscard]] Stage stage() const noexcept { return stage_; }

private:
    Stage stage_;
};

[[nodiscard]] std::string_view to_string(Source source) noexcept;
[[nodiscard]] std::string_view to_string(Stage stage) noexcept;

[[nodiscard]] nlohmann::json to_json(const RetrievalCandidate& candidate);
[[nodiscard]] nlohmann::json to_json(const RetrievalResult& result);

}  // namespace iyp::retrieval
