// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iyp/cypher/query_executor.hpp"
#include "iyp/graph/schema.hpp"
#include "iyp/llm/prompt.hpp"
#include "iyp/llm/provider.hpp"
#include "iyp/retrieval/candidate.hpp"

namespace iyp::retrieval {

/// Body of the first ``` fenced block (language tag dropped), else the whole
/// text; trimmed, trailing semicolons removed.
[[nodiscard]] std::string extract_query(std::string_view completion);

/// Few-shot section of the text_to_cypher prompt.
[[nodiscard]] std::string format_examples(const std::vector<llm::FewShotExample>& examples);

/// Renders text_to_cypher and returns the extracted query. Provider errors
/// propagate.
[[nodiscard]] std::string text_to_cypher(std::string_view question, const graph::SchemaCatalog& schema,
                                         const llm::PromptLibrary& prompts,
                                         const llm::Provider& provider, const llm::ChatParams& params);

/// "<col>=<value>; ..." in column order.
[[nodiscard]] std::string row_text(const cypher::RowSet& rows, std::size_t row);

struct CypherRetrieval {
    std::string generated;  // the query text the model produced
    std::vector<RetrievalCandidate> candidates;
    std::optional<std::string> executed_cypher;
    std::vector<std::string> diagnostics;
};

/// text_to_cypher, then read-only validation, parse and execution. Query
/// failures are recorded in diagnostics and give zero candidates; only
/// provider errors escape.
[[nodiscard]] CypherRetrieval cypher_retrieve(std::string_view question,
                                              const graph::SchemaCatalog& schema,
                                              const cypher::QueryExecutor& executor,
                                              const llm::PromptLibrary& prompts,
                                              const llm::Provider& provider,
                                              const llm::ChatParams& params);

}  // namespace iyp::retrieval
