// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iyp/llm/prompt.hpp"
#include "iyp/llm/provider.hpp"
#include "iyp/retrieval/candidate.hpp"

namespace iyp::retrieval {

/// First integer in [0, 10] in the judge's reply.
[[nodiscard]] std::optional<int> parse_relevance(std::string_view completion);

struct RerankResult {
    std::vector<RetrievalCandidate> candidates;  // relevance filled in
    std::vector<std::string> diagnostics;
};

/// Pointwise 0-10 relevance per candidate, then the top n by relevance,
/// retrieval score and original position. Unparseable replies score 0.
/// Calls run on up to `parallelism` threads; output order is unaffected.
/// Throws std::invalid_argument for empty input or n == 0.
[[nodiscard]] RerankResult rerank(std::string_view question,
                                  const std::vector<RetrievalCandidate>& candidates,
                                  const llm::PromptLibrary& prompts, const llm::Provider& provider,
                                  const llm::ChatParams& params, std::size_t n,
                                  std::size_t parallelism = 1);

}  // namespace iyp::retrieval
