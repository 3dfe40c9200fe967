// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/llm/provider.hpp"

#include <algorithm>
#include <thread>

namespace iyp::llm {

Completion chat(const Provider& provider, const std::vector<ChatMessage>& messages,
                const ChatParams& params) {
    if (messages.empty()) {
        throw std::invalid_argument("chat requires at least one message");
    }
    using clock = std::chrono::steady_clock;
    const int retries = std::max(0, params.retries);
    const auto deadline = clock::now() + params.timeout * (retries + 1);
    auto delay = params.backoff;

    for (int attempt = 0;; ++attempt) {
        try {
            return provider.complete(messages, params);
        } catch (const ProviderError& e) {
            if (!e.retryable() || attempt >= retries) {
                throw;
            }
            const auto now = clock::now();
            if (now + delay >= deadline) {
                throw ProviderError(std::string(e.what()) + " (retry budget exhausted)",
                                    ProviderError::Kind::timeout);
            }
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
    }
}

std::vector<EmbeddingVector> embed(const Provider& provider, const std::vector<std::string>& texts) {
    if (texts.empty()) {
        throw std::invalid_argument("embed requires at least one text");
    }
    auto vectors = provider.embed_batch(texts);
    if (vectors.size() != texts.size()) {
        throw ProviderError("embedding provider returned " + std::to_string(vectors.size()) +
                            " vectors for " + std::to_string(texts.size()) + " texts");
    }
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim || dim == 0) {
            throw ProviderError("embedding dimension mismatch within one batch");
        }
    }
    return vectors;
}

}  // namespace iyp::llm
