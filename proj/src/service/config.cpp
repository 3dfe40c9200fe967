// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/service/config.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>

#include <nlohmann/json.hpp>

namespace iyp::service {

using nlohmann::json;

std::string_view to_string(Role role) noexcept {
    switch (role) {
        case Role::cypher: return "cypher";
        case Role::embed: return "embed";
        case Role::rerank: return "rerank";
        case Role::synthesize: return "synthesize";
        case Role::reference: return "reference";
        case Role::judge: return "judge";
    }
    return "cypher";
}

const ProviderConfig& Config::provider_for(Role role) const {
    const auto it = role_providers.find(role);
    return it == role_providers.end() ? provider : it->second;
}

namespace {

class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_ + " must be an object");
        }
    }

    void allow(std::initializer_list<const char*> keys) const {
        for (const auto& [key, value] : j_.items()) {
            bool known = false;
            for (const char* k : keys) {
                known = known || key == k;
            }
            if (!known) {
                throw ConfigError("unknown config key " + name(key));
            }
        }
    }

    [[nodiscard]] bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
    [[nodiscard]] const json& at(const char* key) const { return j_.at(key); }
    [[nodiscard]] std::string name(const std::string& key) const { return path_ + "." + key; }

    [[nodiscard]] std::string str(const char* key, std::string fallback) const {
        if (!has(key)) {
            return fallback;
        }
        if (!at(key).is_string()) {
            throw ConfigError(name(key) + " must be a string");
        }
        return at(key).get<std::string>();
    }

    [[nodiscard]] std::int64_t integer(const char* key, std::int64_t fallback, std::int64_t lo,
                                       std::int64_t hi = std::numeric_limits<std::int64_t>::max()) const {
        if (!has(key)) {
            return fallback;
        }
        if (!at(key).is_number_integer()) {
            throw ConfigError(name(key) + " must be an integer");
        }
        const auto v = at(key).get<std::int64_t>();
        if (v < lo || v > hi) {
            throw ConfigError(name(key) + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        return v;
    }

    [[nodiscard]] std::size_t size(const char* key, std::size_t fallback, std::int64_t lo) const {
        return static_cast<std::size_t>(integer(key, static_cast<std::int64_t>(fallback), lo));
    }

    [[nodiscard]] double number(const char* key, double fallback) const {
        if (!has(key)) {
            return fallback;
        }
        if (!at(key).is_number()) {
            throw ConfigError(name(key) + " must be a number");
        }
        return at(key).get<double>();
    }

private:
    const json& j_;
    std::string path_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

ProviderConfig parse_provider(const json& j, const std::string& where, const std::filesystem::path& base) {
    const Section s(j, where);
    s.allow({"kind", "script", "base_url", "api_key", "chat_model", "embed_model", "embed_timeout_ms",
             "top_logprobs"});
    ProviderConfig out;
    const std::string kind = s.str("kind", "");
    if (kind == "scripted") {
        out.kind = ProviderConfig::Kind::scripted;
        const std::string script = s.str("script", "");
        if (script.empty()) {
            throw ConfigError(s.name("script") + " is required for a scripted provider");
        }
        out.script = resolve(base, script);
    } else if (kind == "openai") {
        out.kind = ProviderConfig::Kind::openai;
        llm::OpenAiConfig o;
        o.base_url = s.str("base_url", o.base_url);
        o.api_key = s.str("api_key", o.api_key);
        o.chat_model = s.str("chat_model", o.chat_model);
        o.embed_model = s.str("embed_model", o.embed_model);
        o.embed_timeout = std::chrono::milliseconds(s.integer("embed_timeout_ms", o.embed_timeout.count(), 1));
        o.top_logprobs = static_cast<int>(s.integer("top_logprobs", o.top_logprobs, 1, 20));
        out.openai = llm::apply_env(std::move(o));
    } else {
        throw ConfigError(s.name("kind") + " must be \"scripted\" or \"openai\"");
    }
    return out;
}

GraphConfig parse_graph(const json& j, const std::filesystem::path& base) {
    const Section s(j, "graph");
    s.allow({"ndjson", "remote", "schema"});
    GraphConfig g;
    if (s.has("ndjson")) {
        g.ndjson = resolve(base, s.str("ndjson", ""));
    }
    if (s.has("schema")) {
        g.schema = resolve(base, s.str("schema", ""));
    }
    if (s.has("remote")) {
        const Section r(s.at("remote"), "graph.remote");
        r.allow({"url", "database", "bearer_token", "username", "password", "timeout_ms"});
        cypher::RemoteEndpointConfig e;
        e.url = r.str("url", "");
        if (e.url.empty()) {
            throw ConfigError("graph.remote.url is required");
        }
        e.database = r.str("database", e.database);
        e.bearer_token = r.str("bearer_token", "");
        e.username = r.str("username", "");
        e.password = r.str("password", "");
        e.timeout = std::chrono::milliseconds(r.integer("timeout_ms", e.timeout.count(), 1));
        g.remote = std::move(e);
    }
    if (!g.ndjson && !g.remote) {
        throw ConfigError("graph needs \"ndjson\" or \"remote\"");
    }
    if (g.remote && !g.ndjson && !g.schema) {
        throw ConfigError("graph.remote needs a local \"ndjson\" dump or \"schema\" file for prompts");
    }
    return g;
}

}  // namespace

Config config_from_json(const json& j, const std::filesystem::path& base_dir) {
    const Section top(j, "config");
    top.allow({"graph", "index_path", "prompts_dir", "provider", "providers", "retrieval", "chat", "eval", "service"});
    Config c;
    if (!top.has("graph")) {
        throw ConfigError("config.graph is required");
    }
    c.graph = parse_graph(top.at("graph"), base_dir);
    if (top.has("index_path")) {
        c.index_path = resolve(base_dir, top.str("index_path", ""));
    }
    c.prompts_dir = resolve(base_dir, top.str("prompts_dir", "prompts"));
    if (!top.has("provider")) {
        throw ConfigError("config.provider is required");
    }
    c.provider = parse_provider(top.at("provider"), "provider", base_dir);
    if (top.has("providers")) {
        const Section roles(top.at("providers"), "providers");
        roles.allow({"cypher", "embed", "rerank", "synthesize", "reference", "judge"});
        for (const Role r : kRoles) {
            const std::string key(to_string(r));
            if (roles.has(key.c_str())) {
                c.role_providers[r] = parse_provider(roles.at(key.c_str()), roles.name(key), base_dir);
            }
        }
    }
    if (top.has("retrieval")) {
        const Section s(top.at("retrieval"), "retrieval");
        s.allow({"min_rows", "k", "rerank_above", "top_n", "batch_size", "parallelism"});
        auto& r = c.retrieval;
        r.min_rows = s.size("min_rows", r.min_rows, 1);
        r.k = s.size("k", r.k, 1);
        r.rerank_above = s.size("rerank_above", r.rerank_above, 0);
        r.top_n = s.size("top_n", r.top_n, 1);
        r.batch_size = s.size("batch_size", r.batch_size, 1);
        r.parallelism = s.size("parallelism", r.parallelism, 1);
    }
    if (top.has("chat")) {
        const Section s(top.at("chat"), "chat");
        s.allow({"temperature", "max_tokens", "timeout_ms", "retries", "backoff_ms"});
        auto& p = c.chat;
        p.temperature = s.number("temperature", p.temperature);
        if (p.temperature < 0.0 || p.temperature > 2.0) {
            throw ConfigError("chat.temperature must be in [0, 2]");
        }
        p.max_tokens = static_cast<int>(s.integer("max_tokens", p.max_tokens, 1, 1 << 20));
        p.timeout = std::chrono::milliseconds(s.integer("timeout_ms", p.timeout.count(), 1));
        p.retries = static_cast<int>(s.integer("retries", p.retries, 0, 10));
        p.backoff = std::chrono::milliseconds(s.integer("backoff_ms", p.backoff.count(), 0));
    }
    if (top.has("eval")) {
        const Section s(top.at("eval"), "eval");
        s.allow({"metrics", "parallelism", "max_rows", "bleu_max_n", "cache_dir"});
        auto& e = c.eval;
        if (s.has("metrics")) {
            try {
                e.metrics = eval::parse_metrics(s.str("metrics", ""));
            } catch (const std::invalid_argument& ex) {
                throw ConfigError(std::string("eval.metrics: ") + ex.what());
            }
        }
        e.parallelism = s.size("parallelism", e.parallelism, 1);
        e.max_rows = s.size("max_rows", e.max_rows, 1);
        e.bleu_max_n = static_cast<int>(s.integer("bleu_max_n", e.bleu_max_n, 1, 8));
        if (s.has("cache_dir")) {
            e.cache_dir = resolve(base_dir, s.str("cache_dir", ""));
        }
    }
    if (top.has("service")) {
        const Section s(top.at("service"), "service");
        s.allow({"bind", "port", "cors_origin", "max_concurrent", "request_timeout_ms"});
        auto& v = c.service;
        v.bind = s.str("bind", v.bind);
        v.port = static_cast<int>(s.integer("port", v.port, 0, 65535));
        v.cors_origin = s.str("cors_origin", v.cors_origin);
        v.max_concurrent = s.size("max_concurrent", v.max_concurrent, 1);
        v.request_timeout = std::chrono::milliseconds(s.integer("request_timeout_ms", v.request_timeout.count(), 1));
    }
    return c;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ConfigError("config " + path.string() + " is not valid JSON");
    }
    return config_from_json(j, std::filesystem::absolute(path).parent_path());
}

}  // namespace iyp::service
