// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/service/pipeline.hpp"

#include <chrono>
#include <fstream>

#include <nlohmann/json.hpp>

#include "iyp/graph/loader.hpp"
#include "iyp/llm/scripted.hpp"

namespace iyp::service {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string provider_key(const ProviderConfig& p) {
    if (p.kind == ProviderConfig::Kind::scripted) {
        return "scripted\n" + p.script.string();
    }
    const auto& o = p.openai;
    return "openai\n" + o.base_url + "\n" + o.api_key + "\n" + o.chat_model + "\n" + o.embed_model + "\n" +
           std::to_string(o.embed_timeout.count()) + "\n" + std::to_string(o.top_logprobs);
}

std::shared_ptr<const llm::Provider> make_provider(const ProviderConfig& p) {
    if (p.kind == ProviderConfig::Kind::scripted) {
        try {
            return std::make_shared<llm::ScriptedProvider>(llm::load_script(p.script),
                                                           p.script.stem().string());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("script " + p.script.string() + ": " + e.what());
        }
    }
    return std::make_shared<llm::OpenAiProvider>(p.openai);
}

}  // namespace

std::optional<std::string> AskResult::cypher() const {
    if (retrieval.executed_cypher) {
        return retrieval.executed_cypher;
    }
    return answer.refined_cypher;
}

std::map<Role, std::shared_ptr<const llm::Provider>> build_providers(const Config& config) {
    std::map<std::string, std::shared_ptr<const llm::Provider>> by_key;
    std::map<Role, std::shared_ptr<const llm::Provider>> out;
    for (const Role r : kRoles) {
        const ProviderConfig& p = config.provider_for(r);
        auto& slot = by_key[provider_key(p)];
        if (!slot) {
            slot = make_provider(p);
        }
        out[r] = slot;
    }
    return out;
}

retrieval::VectorIndex build_index_for(const Config& config) {
    if (!config.graph.ndjson) {
        throw ConfigError("building an index needs a local graph.ndjson dump");
    }
    const auto graph = graph::load_graph_file(*config.graph.ndjson);
    const auto providers = build_providers(config);
    retrieval::IndexBuildOptions opts;
    opts.batch_size = config.retrieval.batch_size;
    opts.parallelism = config.retrieval.parallelism;
    return retrieval::build_vector_index(graph, *providers.at(Role::embed), opts);
}

std::unique_ptr<Pipeline> Pipeline::load(const Config& config, const LoadOptions& options) {
    std::unique_ptr<Pipeline> p(new Pipeline());
    p->config_ = config;
    p->prompts_ = llm::PromptLibrary::load_dir(config.prompts_dir);
    for (const auto& id : llm::required_template_ids()) {
        if (!p->prompts_.contains(id)) {
            throw ConfigError("prompt template '" + id + "' missing from " + config.prompts_dir.string());
        }
    }
    p->providers_ = build_providers(config);
    if (config.graph.ndjson) {
        p->graph_ = std::make_unique<graph::PropertyGraph>(graph::load_graph_file(*config.graph.ndjson));
    }
    if (config.graph.schema) {
        std::ifstream in(*config.graph.schema);
        if (!in) {
            throw ConfigError("cannot open schema " + config.graph.schema->string());
        }
        p->schema_ = graph::schema_from_json(nlohmann::json::parse(in));
    } else {
        p->schema_ = graph::schema_catalog(*p->graph_);
    }
    if (config.graph.remote) {
        p->executor_ = std::make_unique<cypher::RemoteExecutor>(*config.graph.remote);
    } else {
        p->executor_ = std::make_unique<cypher::LocalExecutor>(*p->graph_);
    }
    if (config.index_path && std::filesystem::exists(*config.index_path)) {
        p->index_ = retrieval::load_index(*config.index_path);
    } else if (options.require_index_file) {
        throw ConfigError("vector index file " +
                          (config.index_path ? config.index_path->string() : std::string("(unset)")) +
                          " not found; run the index command first");
    } else if (p->graph_) {
        retrieval::IndexBuildOptions opts;
        opts.batch_size = config.retrieval.batch_size;
        opts.parallelism = config.retrieval.parallelism;
        p->index_ = retrieval::build_vector_index(*p->graph_, p->provider(Role::embed), opts);
    }
    return p;
}

AskResult Pipeline::ask(std::string_view question, const retrieval::RetrievalConfig& retrieval_config) const {
    const auto start = Clock::now();
    const retrieval::RetrievalDeps deps{schema_,
                                        *executor_,
                                        index_,
                                        prompts_,
                                        provider(Role::cypher),
                                        provider(Role::embed),
                                        provider(Role::rerank),
                                        config_.chat};
    AskResult out;
    try {
        out.retrieval = retrieval::retrieve(question, deps, retrieval_config);
    } catch (const retrieval::StageError& e) {
        throw UpstreamError(std::string(retrieval::to_string(e.stage())), e.what());
    }
    const auto synth_start = Clock::now();
    try {
        out.answer = generation::synthesize(question, out.retrieval, prompts_, provider(Role::synthesize),
                                            config_.chat);
    } catch (const llm::ProviderError& e) {
        throw UpstreamError("synthesize", e.what());
    }
    out.synthesize_ms = ms_since(synth_start);
    out.total_ms = ms_since(start);
    return out;
}

eval::MetricReport Pipeline::evaluate(const std::vector<eval::EvalRecord>& dataset,
                                      const eval::MetricSelection& metrics) const {
    std::optional<eval::ReferenceCache> cache;
    if (config_.eval.cache_dir) {
        cache.emplace(*config_.eval.cache_dir);
    }
    eval::EvalConfig cfg;
    cfg.metrics = metrics;
    cfg.parallelism = config_.eval.parallelism;
    cfg.max_rows = config_.eval.max_rows;
    cfg.bleu_max_n = config_.eval.bleu_max_n;
    cfg.params = config_.chat;
    cfg.cache = cache ? &*cache : nullptr;
    const eval::SystemUnderTest system = [this](const eval::EvalRecord& record) {
        AskResult r = ask(record.question);
        generation::Answer a = std::move(r.answer);
        a.refined_cypher = r.cypher();
        return a;
    };
    const eval::EvalProviders providers{provider(Role::reference), provider(Role::judge), provider(Role::embed)};
    return eval::evaluate(dataset, system, *executor_, prompts_, providers, cfg);
}

}  // namespace iyp::service
