// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>

#include "iyp/cypher/query_executor.hpp"
#include "iyp/graph/schema.hpp"
#include "iyp/llm/prompt.hpp"
#include "iyp/llm/provider.hpp"
#include "iyp/retrieval/candidate.hpp"
#include "iyp/retrieval/vector_index.hpp"

namespace iyp::retrieval {

struct RetrievalConfig {
    std::size_t min_rows = 1;      // fewer Cypher candidates triggers the vector fallback; >= 1
    std::size_t k = 5;             // vector hits on fallback
    std::size_t rerank_above = 5;  // rerank when more candidates than this
    std::size_t top_n = 5;         // rerank keeps this many
    std::size_t batch_size = 64;   // index build
    std::size_t parallelism = 4;   // concurrent rerank calls / index batches
};

/// Everything retrieve() reads; all of it outlives the call.
struct RetrievalDeps {
    const graph::SchemaCatalog& schema;
    const cypher::QueryExecutor& executor;
    const VectorIndex& index;
    const llm::PromptLibrary& prompts;
    const llm::Provider& cypher_provider;
    const llm::Provider& embed_provider;
    const llm::Provider& rerank_provider;
    llm::ChatParams params;
};

/// Text-to-Cypher, vector fallback when fewer than min_rows Cypher
/// candidates came back (hits are appended), then rerank when the total
/// exceeds rerank_above. Provider errors surface as StageError; min_rows,
/// k or top_n of 0 is std::invalid_argument.
[[nodiscard]] RetrievalResult retrieve(std::string_view question, const RetrievalDeps& deps,
                                       const RetrievalConfig& config = {});

}  // namespace iyp::retrieval
