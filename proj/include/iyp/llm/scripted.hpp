// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iyp/llm/provider.hpp"

namespace iyp::llm {

struct ScriptEntry {
    /// All substrings must occur in the last user message. {"*"} matches
    /// anything.
    std::vector<std::string> patterns;
    std::string response;
    bool one_shot = false;
    std::optional<std::vector<TokenScore>> token_scores;
    /// When set the entry raises ProviderError instead of answering.
    std::optional<std::string> error;
    bool transient = false;
};

struct Script {
    std::vector<ScriptEntry> chat;
    std::map<std::string, EmbeddingVector> embeddings;  // exact text -> vector
    std::size_t embedding_dimension = 64;
    std::uint64_t seed = 0;
};

/// {"chat":[{"match": "text" | ["a","b"], "response": "...", "one_shot": bool,
///           "token_scores": {"4": 0.5}, "error": "...", "transient": bool}],
///  "embeddings": {"text": [..]}, "embedding_dim": 64, "seed": 0}
/// When embedding_dim is absent it is taken from the explicit embeddings.
[[nodiscard]] Script script_from_json(const nlohmann::json& j);
[[nodiscard]] Script load_script(const std::filesystem::path& path);

class ScriptError : public ProviderError {
public:
    explicit ScriptError(const std::string& message) : ProviderError(message) {}
};

/// Deterministic test double. chat() answers with the first live entry
/// matching the last user message; embed uses explicit vectors, else
/// hash_embedding(text, dimension, seed).
class ScriptedProvider final : public Provider {
public:
    explicit ScriptedProvider(Script script, std::string name = "scripted");

    [[nodiscard]] std::string id() const override { return "scripted:" + name_; }
    [[nodiscard]] Completion complete(const std::vector<ChatMessage>& messages,
                                      const ChatParams& params) const override;
    [[nodiscard]] std::vector<EmbeddingVector> embed_batch(
        const std::vector<std::string>& texts) const override;

    [[nodiscard]] std::size_t dimension() const noexcept { return script_.embedding_dimension; }
    /// Number of complete() calls so far, answered or not.
    [[nodiscard]] std::size_t chat_calls() const;

private:
    Script script_;
    std::string name_;
    mutable std::mutex mu_;
    mutable std::vector<bool> consumed_;
    mutable std::size_t chat_calls_ = 0;
};

}  // namespace iyp::llm
