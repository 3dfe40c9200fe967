// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "iyp/cypher/query_executor.hpp"
#include "iyp/eval/evaluate.hpp"
#include "iyp/generation/synthesize.hpp"
#include "iyp/graph/property_graph.hpp"
#include "iyp/graph/schema.hpp"
#include "iyp/llm/prompt.hpp"
#include "iyp/llm/provider.hpp"
#include "iyp/retrieval/orchestrator.hpp"
#include "iyp/retrieval/vector_index.hpp"
#include "iyp/service/config.hpp"

namespace iyp::service {

/// A stage of the ask pipeline failed upstream (provider or database).
class UpstreamError : public std::runtime_error {
public:
    UpstreamError(std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct AskResult {
    retrieval::RetrievalResult retrieval;
    generation::Answer answer;
    double synthesize_ms = 0.0;
    double total_ms = 0.0;

    /// The executed query when there was one, else the model's suggestion.
    [[nodiscard]] std::optional<std::string> cypher() const;
};

/// Builds providers from config. Distinct roles with identical settings
/// share one instance.
[[nodiscard]] std::map<Role, std::shared_ptr<const llm::Provider>> build_providers(const Config& config);

/// Everything an ask needs, loaded once and read-only afterwards.
class Pipeline {
public:
    struct LoadOptions {
        bool require_index_file = false;  // otherwise the index is built when missing
    };

    [[nodiscard]] static std::unique_ptr<Pipeline> load(const Config& config, const LoadOptions& options);
    [[nodiscard]] static std::unique_ptr<Pipeline> load(const Config& config) { return load(config, {}); }

    /// Retrieve then synthesize. Throws UpstreamError naming the stage.
    [[nodiscard]] AskResult ask(std::string_view question, const retrieval::RetrievalConfig& retrieval) const;
    [[nodiscard]] AskResult ask(std::string_view question) const { return ask(question, config_.retrieval); }

    /// Runs the evaluation over a dataset with this pipeline as the system.
    [[nodiscard]] eval::MetricReport evaluate(const std::vector<eval::EvalRecord>& dataset,
                                              const eval::MetricSelection& metrics) const;

    [[nodiscard]] const Config& config() const noexcept { return config_; }
    [[nodiscard]] const graph::SchemaCatalog& schema() const noexcept { return schema_; }
    [[nodiscard]] const cypher::QueryExecutor& executor() const noexcept { return *executor_; }
    [[nodiscard]] const retrieval::VectorIndex& index() const noexcept { return index_; }
    [[nodiscard]] const llm::PromptLibrary& prompts() const noexcept { return prompts_; }
    [[nodiscard]] const llm::Provider& provider(Role role) const { return *providers_.at(role); }
    [[nodiscard]] std::size_t graph_nodes() const noexcept { return graph_ ? graph_->node_count() : 0; }

private:
    Pipeline() = default;

    Config config_;
    std::unique_ptr<graph::PropertyGraph> graph_;
    graph::SchemaCatalog schema_;
    std::unique_ptr<cypher::QueryExecutor> executor_;
    retrieval::VectorIndex index_;
    llm::PromptLibrary prompts_;
    std::map<Role, std::shared_ptr<const llm::Provider>> providers_;
};

/// Loads the configured graph dump (no remote contact) and builds the index.
[[nodiscard]] retrieval::VectorIndex build_index_for(const Config& config);

}  // namespace iyp::service
