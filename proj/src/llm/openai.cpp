// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/llm/openai.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "iyp/common/url.hpp"

namespace iyp::llm {

using nlohmann::json;

namespace {

void override_from_env(std::string& field, const char* name) {
    if (const char* v = std::getenv(name); v != nullptr && *v != '\0') {
        field = v;
    }
}

json post_json(const OpenAiConfig& config, const std::string& path, const json& body,
               std::chrono::milliseconds timeout) {
    const BaseUrl base = parse_base_url(config.base_url);
    httplib::Client client(base.scheme_host_port);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    if (!config.api_key.empty()) {
        client.set_bearer_token_auth(config.api_key);
    }
    const auto res = client.Post(base.join(path), body.dump(), "application/json");
    if (!res) {
        const auto err = res.error();
        const bool timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
        throw ProviderError("LLM request to " + path + " failed: " + httplib::to_string(err),
                            timed_out ? ProviderError::Kind::timeout : ProviderError::Kind::transient);
    }
    if (res->status < 200 || res->status >= 300) {
        const bool transient = res->status == 429 || res->status >= 500;
        throw ProviderError("LLM endpoint " + path + " returned HTTP " + std::to_string(res->status) +
                                ": " + res->body.substr(0, 512),
                            transient ? ProviderError::Kind::transient : ProviderError::Kind::permanent);
    }
    try {
        return json::parse(res->body);
    } catch (const json::parse_error& e) {
        throw ProviderError("LLM endpoint " + path + " returned invalid JSON: " + e.what());
    }
}

}  // namespace

OpenAiConfig apply_env(OpenAiConfig config) {
    override_from_env(config.base_url, "IYP_LLM_BASE_URL");
    override_from_env(config.api_key, "IYP_LLM_API_KEY");
    override_from_env(config.chat_model, "IYP_CHAT_MODEL");
    override_from_env(config.embed_model, "IYP_EMBED_MODEL");
    return config;
}

OpenAiProvider::OpenAiProvider(OpenAiConfig config) : config_(std::move(config)) {
    (void)parse_base_url(config_.base_url);
}

json chat_request_body(const OpenAiConfig& config, const std::vector<ChatMessage>& messages,
                       const ChatParams& params) {
    json msgs = json::array();
    for (const auto& m : messages) {
        msgs.push_back(to_json(m));
    }
    json body{{"model", config.chat_model},
              {"messages", std::move(msgs)},
              {"temperature", params.temperature},
              {"max_tokens", params.max_tokens}};
    if (params.want_token_scores) {
        body["logprobs"] = true;
        body["top_logprobs"] = config.top_logprobs;
    }
    return body;
}

Completion parse_chat_response(const json& body) {
    try {
        const json& choice = body.at("choices").at(0);
        Completion c;
        const json& content = choice.at("message").at("content");
        c.text = content.is_null() ? std::string{} : content.get<std::string>();
        const auto lp = choice.find("logprobs");
        if (lp != choice.end() && lp->is_object()) {
            const auto tokens = lp->find("content");
            if (tokens != lp->end() && tokens->is_array() && !tokens->empty()) {
                std::vector<TokenScore> scores;
                for (const auto& alt : tokens->front().value("top_logprobs", json::array())) {
                    const double p = std::exp(alt.at("logprob").get<double>());
                    scores.push_back({alt.at("token").get<std::string>(), std::clamp(p, 0.0, 1.0)});
                }
                if (!scores.empty()) {
                    c.token_scores = std::move(scores);
                }
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed chat completion response: ") + e.what());
    }
}

json embedding_request_body(const OpenAiConfig& config, const std::vector<std::string>& texts) {
    return {{"model", config.embed_model}, {"input", texts}};
}

std::vector<EmbeddingVector> parse_embedding_response(const json& body, std::size_t expected) {
    try {
        std::vector<EmbeddingVector> out(expected);
        std::vector<bool> seen(expected, false);
        const json& data = body.at("data");
        for (std::size_t pos = 0; pos < data.size(); ++pos) {
            const json& item = data[pos];
            const std::size_t index = item.value("index", pos);
            if (index >= expected || seen[index]) {
                throw ProviderError("embedding response has a bad or repeated index");
            }
            seen[index] = true;
            out[index] = item.at("embedding").get<EmbeddingVector>();
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw ProviderError("embedding response is missing entries");
        }
        return out;
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed embedding response: ") + e.what());
    }
}

Completion OpenAiProvider::complete(const std::vector<ChatMessage>& messages,
                                    const ChatParams& params) const {
    return parse_chat_response(post_json(config_, "/chat/completions",
                                         chat_request_body(config_, messages, params), params.timeout));
}

std::vector<EmbeddingVector> OpenAiProvider::embed_batch(const std::vector<std::string>& texts) const {
    return parse_embedding_response(
        post_json(config_, "/embeddings", embedding_request_body(config_, texts), config_.embed_timeout),
        texts.size());
}

}  // namespace iyp::llm
