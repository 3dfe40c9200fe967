// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/retrieval/orchestrator.hpp"

#include <chrono>

#include "iyp/retrieval/rerank.hpp"
#include "iyp/retrieval/text_to_cypher.hpp"

namespace iyp::retrieval {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

RetrievalResult retrieve(std::string_view question, const RetrievalDeps& deps,
                         const RetrievalConfig& config) {
    if (config.min_rows == 0 || config.k == 0 || config.top_n == 0) {
        throw std::invalid_argument("retrieval min_rows, k and top_n must be at least 1");
    }
    RetrievalResult result;

    auto start = std::chrono::steady_clock::now();
    result.path.push_back(Stage::text_to_cypher);
    CypherRetrieval cy;
    try {
        cy = cypher_retrieve(question, deps.schema, deps.executor, deps.prompts, deps.cypher_provider,
                             deps.params);
    } catch (const llm::ProviderError& e) {
        throw StageError(Stage::text_to_cypher, e.what());
    }
    result.timings_ms["text_to_cypher"] = elapsed_ms(start);
    for (auto& d : cy.diagnostics) {
        result.diagnostics.push_back({Stage::text_to_cypher, std::move(d)});
    }
    result.executed_cypher = std::move(cy.executed_cypher);
    result.candidates = std::move(cy.candidates);

    if (result.candidates.size() < config.min_rows) {
        start = std::chrono::steady_clock::now();
        result.path.push_back(Stage::vector_fallback);
        std::vector<RetrievalCandidate> hits;
        try {
            hits = vector_retrieve(question, deps.index, deps.embed_provider, config.k);
        } catch (const llm::ProviderError& e) {
            throw StageError(Stage::vector_fallback, e.what());
        }
        result.diagnostics.push_back(
            {Stage::vector_fallback, std::to_string(hits.size()) + " vector hit(s) from " +
                                         std::to_string(deps.index.size()) + " indexed node(s)"});
        for (auto& h : hits) {
            result.candidates.push_back(std::move(h));
        }
        result.timings_ms["vector_fallback"] = elapsed_ms(start);
    }

    if (result.candidates.size() > config.rerank_above && !result.candidates.empty()) {
        start = std::chrono::steady_clock::now();
        result.path.push_back(Stage::rerank);
        RerankResult rr;
        try {
            rr = rerank(question, result.candidates, deps.prompts, deps.rerank_provider, deps.params,
                        config.top_n, config.parallelism);
        } catch (const llm::ProviderError& e) {
            throw StageError(Stage::rerank, e.what());
        }
        for (auto& d : rr.diagnostics) {
            result.diagnostics.push_back({Stage::rerank, std::move(d)});
        }
        result.candidates = std::move(rr.candidates);
        result.timings_ms["rerank"] = elapsed_ms(start);
    }
    return result;
}

}  // namespace iyp::retrieval
