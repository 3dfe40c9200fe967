// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "iyp/cypher/remote.hpp"
#include "iyp/eval/evaluate.hpp"
#include "iyp/llm/openai.hpp"
#include "iyp/llm/types.hpp"
#include "iyp/retrieval/orchestrator.hpp"

namespace iyp::service {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which model answers which kind of request.
enum class Role { cypher, embed, rerank, synthesize, reference, judge };

inline constexpr Role kRoles[] = {Role::cypher,     Role::embed,     Role::rerank,
                                  Role::synthesize, Role::reference, Role::judge};

[[nodiscard]] std::string_view to_string(Role role) noexcept;

struct ProviderConfig {
    enum class Kind { scripted, openai };
    Kind kind = Kind::scripted;
    std::filesystem::path script;  // scripted
    llm::OpenAiConfig openai;      // openai, after env overrides
};

/// Local NDJSON dump, or a remote endpoint. In remote mode the schema and the
/// vector index still come from a local dump or schema file.
struct GraphConfig {
    std::optional<std::filesystem::path> ndjson;
    std::optional<cypher::RemoteEndpointConfig> remote;
    std::optional<std::filesystem::path> schema;  // SchemaCatalog JSON
};

struct ServiceSettings {
    std::string bind = "127.0.0.1";
    int port = 8080;
    std::string cors_origin = "http://localhost:5173";
    std::size_t max_concurrent = 8;
    std::chrono::milliseconds request_timeout{120'000};
    std::size_t max_k = 50;
    std::size_t max_top_n = 20;
};

struct EvalSettings {
    eval::MetricSelection metrics;
    std::size_t parallelism = 4;
    std::size_t max_rows = 50;
    int bleu_max_n = 4;
    std::optional<std::filesystem::path> cache_dir;
};

struct Config {
    GraphConfig graph;
    std::optional<std::filesystem::path> index_path;
    std::filesystem::path prompts_dir = "prompts";
    ProviderConfig provider;
    std::map<Role, ProviderConfig> role_providers;  // overrides of `provider`
    retrieval::RetrievalConfig retrieval;
    llm::ChatParams chat;
    EvalSettings eval;
    ServiceSettings service;

    /// The provider settings used for a role.
    [[nodiscard]] const ProviderConfig& provider_for(Role role) const;
};

/// Validates and resolves relative paths against base_dir. Environment
/// overrides (IYP_LLM_BASE_URL, IYP_LLM_API_KEY, IYP_CHAT_MODEL,
/// IYP_EMBED_MODEL) apply to every openai provider. Throws ConfigError.
[[nodiscard]] Config config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Reads and parses a config file; relative paths resolve against its
/// directory.
[[nodiscard]] Config load_config(const std::filesystem::path& path);

}  // namespace iyp::service
