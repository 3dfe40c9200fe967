// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iyp/llm/prompt.hpp"
#include "iyp/llm/provider.hpp"
#include "iyp/retrieval/candidate.hpp"

namespace iyp::generation {

struct Answer {
    std::string text;
    std::optional<std::string> refined_cypher;
    std::string raw_completion;
};

/// Total. Uses the first brace-matched JSON object in the text that has a
/// non-empty string "answer"; its "cypher" is taken when it is a non-empty
/// string, else fallback_cypher. Without such an object the whole completion
/// is the answer and fallback_cypher the query.
[[nodiscard]] Answer parse_model_output(std::string_view completion,
                                        const std::optional<std::string>& fallback_cypher);

/// Numbered context lines, "[source] text", or a note that nothing was found.
[[nodiscard]] std::string format_context(const std::vector<retrieval::RetrievalCandidate>& candidates);

/// Renders the synthesize template and parses the reply. Provider errors
/// propagate.
[[nodiscard]] Answer synthesize(std::string_view question, const retrieval::RetrievalResult& retrieval,
                                const llm::PromptLibrary& prompts, const llm::Provider& provider,
                                const llm::ChatParams& params);

}  // namespace iyp::generation
