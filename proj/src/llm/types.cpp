// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/llm/types.hpp"

#include <nlohmann/json.hpp>

namespace iyp::llm {

std::string_view to_string(Role role) noexcept {
    switch (role) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
    }
    return "user";
}

Role role_from_string(std::string_view text) {
    if (text == "system") {
        return Role::system;
    }
    if (text == "user") {
        return Role::user;
    }
    if (text == "assistant") {
        return Role::assistant;
    }
    throw std::invalid_argument("unknown chat role '" + std::string(text) + "'");
}

nlohmann::json to_json(const ChatMessage& message) {
    return {{"role", std::string(to_string(message.role))}, {"content", message.content}};
}

ChatMessage message_from_json(const nlohmann::json& j) {
    return {role_from_string(j.at("role").get<std::string>()), j.at("content").get<std::string>()};
}

}  // namespace iyp::llm
