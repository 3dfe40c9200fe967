// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace iyp::llm {

enum class Role { system, user, assistant };

[[nodiscard]] std::string_view to_string(Role role) noexcept;
/// Throws std::invalid_argument for anything but system/user/assistant.
[[nodiscard]] Role role_from_string(std::string_view text);

struct ChatMessage {
    Role role = Role::user;
    std::string content;
    friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatParams {
    double temperature = 0.0;
    int max_tokens = 1024;
    std::chrono::milliseconds timeout{30'000};  // per attempt
    int retries = 2;
    std::chrono::milliseconds backoff{250};  // first retry delay, doubled each time
    bool want_token_scores = false;          // ask for first-token probabilities
};

struct TokenScore {
    std::string token;
    double probability = 0.0;  // [0, 1]
    friend bool operator==(const TokenScore&, const TokenScore&) = default;
};

struct Completion {
    std::string text;
    /// Alternatives for the first emitted token, when the provider exposes them.
    std::optional<std::vector<TokenScore>> token_scores;
};

using EmbeddingVector = std::vector<double>;

class ProviderError : public std::runtime_error {
public:
    enum class Kind { permanent, transient, timeout };
    explicit ProviderError(const std::string& message, Kind kind = Kind::permanent)
        : std::runtime_error(message), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    /// Worth retrying: transient failures and timeouts.
    [[nodiscard]] bool retryable() const noexcept { return kind_ != Kind::permanent; }

private:
    Kind kind_;
};

[[nodiscard]] nlohmann::json to_json(const ChatMessage& message);
[[nodiscard]] ChatMessage message_from_json(const nlohmann::json& j);

}  // namespace iyp::llm
