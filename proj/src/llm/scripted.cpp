// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/llm/scripted.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "iyp/llm/hash_embedding.hpp"

namespace iyp::llm {

using nlohmann::json;

Script script_from_json(const json& j) {
    Script s;
    try {
        for (const auto& e : j.value("chat", json::array())) {
            ScriptEntry entry;
            const json& match = e.at("match");
            if (match.is_string()) {
                entry.patterns.push_back(match.get<std::string>());
            } else {
                entry.patterns = match.get<std::vector<std::string>>();
            }
            if (entry.patterns.empty()) {
                throw std::invalid_argument("script entry with an empty match list");
            }
            entry.response = e.value("response", std::string{});
            entry.one_shot = e.value("one_shot", false);
            if (const auto ts = e.find("token_scores"); ts != e.end()) {
                std::vector<TokenScore> scores;
                for (const auto& [token, p] : ts->items()) {
                    const double prob = p.get<double>();
                    if (!(prob >= 0.0 && prob <= 1.0)) {
                        throw std::invalid_argument("token score for '" + token + "' outside [0, 1]");
                    }
                    scores.push_back({token, prob});
                }
                entry.token_scores = std::move(scores);
            }
            if (const auto err = e.find("error"); err != e.end()) {
                entry.error = err->get<std::string>();
            }
            entry.transient = e.value("transient", false);
            s.chat.push_back(std::move(entry));
        }
        const json embeddings = j.value("embeddings", json::object());
        for (const auto& [text, v] : embeddings.items()) {
            s.embeddings.emplace(text, v.get<EmbeddingVector>());
        }
        if (j.contains("embedding_dim")) {
            s.embedding_dimension = j.at("embedding_dim").get<std::size_t>();
        } else if (!s.embeddings.empty()) {
            s.embedding_dimension = s.embeddings.begin()->second.size();
        }
        s.seed = j.value("seed", std::uint64_t{0});
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid provider script: ") + e.what());
    }
    return s;
}

Script load_script(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open provider script " + path.string());
    }
    try {
        return script_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("provider script " + path.string() + " is not JSON: " + e.what());
    }
}

ScriptedProvider::ScriptedProvider(Script script, std::string name)
    : script_(std::move(script)), name_(std::move(name)), consumed_(script_.chat.size(), false) {
    if (script_.embedding_dimension == 0) {
        throw std::invalid_argument("scripted embedding dimension must be positive");
    }
    for (const auto& [text, v] : script_.embeddings) {
        if (v.size() != script_.embedding_dimension) {
            throw std::invalid_argument("scripted embedding for '" + text +
                                        "' does not have dimension " +
                                        std::to_string(script_.embedding_dimension));
        }
    }
}

std::size_t ScriptedProvider::chat_calls() const {
    std::lock_guard lock(mu_);
    return chat_calls_;
}

Completion ScriptedProvider::complete(const std::vector<ChatMessage>& messages,
                                      const ChatParams& /*params*/) const {
    const auto last_user = std::find_if(messages.rbegin(), messages.rend(),
                                        [](const ChatMessage& m) { return m.role == Role::user; });
    if (last_user == messages.rend()) {
        throw ScriptError("scripted provider: no user message");
    }
    const std::string& text = last_user->content;

    std::lock_guard lock(mu_);
    ++chat_calls_;
    for (std::size_t i = 0; i < script_.chat.size(); ++i) {
        const ScriptEntry& entry = script_.chat[i];
        if (consumed_[i]) {
            continue;
        }
        const bool matches = std::all_of(entry.patterns.begin(), entry.patterns.end(),
                                         [&](const std::string& p) {
                                             return p == "*" || text.find(p) != std::string::npos;
                                         });
        if (!matches) {
            continue;
        }
        if (entry.one_shot) {
            consumed_[i] = true;
        }
        if (entry.error) {
            throw ProviderError(*entry.error, entry.transient ? ProviderError::Kind::transient
                                                              : ProviderError::Kind::permanent);
        }
        return Completion{entry.response, entry.token_scores};
    }
    const std::string excerpt = text.size() > 160 ? text.substr(0, 160) + "..." : text;
    throw ScriptError("scripted provider: no script entry matches: " + excerpt);
}

std::vector<EmbeddingVector> ScriptedProvider::embed_batch(
    const std::vector<std::string>& texts) const {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        if (const auto it = script_.embeddings.find(t); it != script_.embeddings.end()) {
            out.push_back(it->second);
        } else {
            out.push_back(hash_embedding(t, script_.embedding_dimension, script_.seed));
        }
    }
    return out;
}

}  // namespace iyp::llm
