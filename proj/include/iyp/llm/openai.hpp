// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iyp/llm/provider.hpp"

namespace iyp::llm {

/// Endpoint settings for a chat-completions/embeddings compatible API.
struct OpenAiConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key;
    std::string chat_model = "gpt-3.5-turbo";
    std::string embed_model = "text-embedding-3-small";
    std::chrono::milliseconds embed_timeout{30'000};
    int top_logprobs = 5;
};

/// Applies IYP_LLM_BASE_URL, IYP_LLM_API_KEY, IYP_CHAT_MODEL and
/// IYP_EMBED_MODEL over the given values when set and non-empty.
[[nodiscard]] OpenAiConfig apply_env(OpenAiConfig config);

class OpenAiProvider final : public Provider {
public:
    /// Throws std::invalid_argument on an unusable base URL.
    explicit OpenAiProvider(OpenAiConfig config);

    [[nodiscard]] std::string id() const override { return "openai:" + config_.chat_model; }
    [[nodiscard]] Completion complete(const std::vector<ChatMessage>& messages,
                                      const ChatParams& params) const override;
    [[nodiscard]] std::vector<EmbeddingVector> embed_batch(
        const std::vector<std::string>& texts) const override;

    [[nodiscard]] const OpenAiConfig& config() const noexcept { return config_; }

private:
    OpenAiConfig config_;
};

/// Wire helpers, separated for testing.
[[nodiscard]] nlohmann::json chat_request_body(const OpenAiConfig& config,
                                               const std::vector<ChatMessage>& messages,
                                               const ChatParams& params);
[[nodiscard]] Completion parse_chat_response(const nlohmann::json& body);
[[nodiscard]] nlohmann::json embedding_request_body(const OpenAiConfig& config,
                                                    const std::vector<std::string>& texts);
[[nodiscard]] std::vector<EmbeddingVector> parse_embedding_response(const nlohmann::json& body,
                                                                    std::size_t expected);

}  // namespace iyp::llm
