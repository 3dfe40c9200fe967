// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "iyp/llm/types.hpp"

namespace iyp::llm {

/// A chat-completion and embedding backend. Implementations must be safe to
/// call from several threads at once.
class Provider {
public:
    virtual ~Provider() = default;

    /// Stable identifier, part of cache keys (e.g. "scripted:dev" or
    /// "openai:gpt-4o-mini").
    [[nodiscard]] virtual std::string id() const = 0;

    /// One attempt, no retries. Throws ProviderError.
    [[nodiscard]] virtual Completion complete(const std::vector<ChatMessage>& messages,
                                              const ChatParams& params) const = 0;

    /// One vector per text, order preserved. Throws ProviderError.
    [[nodiscard]] virtual std::vector<EmbeddingVector> embed_batch(
        const std::vector<std::string>& texts) const = 0;
};

/// complete() with retries: retryable failures are retried up to
/// params.retries times with exponential backoff, and the whole call is
/// bounded by timeout * (retries + 1). Throws std::invalid_argument on an
/// empty message list, ProviderError otherwise.
[[nodiscard]] Completion chat(const Provider& provider, const std::vector<ChatMessage>& messages,
                              const ChatParams& params = {});

/// embed_batch() plus contract checks: non-empty input, one vector per text,
/// a single dimension across the batch.
[[nodiscard]] std::vector<EmbeddingVector> embed(const Provider& provider,
                                                 const std::vector<std::string>& texts);

}  // namespace iyp::llm
