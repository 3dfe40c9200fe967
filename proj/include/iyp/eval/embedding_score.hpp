// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "iyp/eval/ngram_metrics.hpp"
#include "iyp/llm/provider.hpp"

namespace iyp::eval {

/// Greedy token matching over token embeddings: recall is the mean, over
/// reference tokens, of the best cosine to any candidate token (negative
/// cosines count as 0); precision symmetrically. All distinct tokens are
/// embedded in one batch. Throws std::invalid_argument when either text has
/// no tokens; provider errors propagate.
[[nodiscard]] PRF embedding_score(std::string_view candidate, std::string_view reference,
                                  const llm::Provider& provider);

}  // namespace iyp::eval
