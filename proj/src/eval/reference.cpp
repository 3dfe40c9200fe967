// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/reference.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "iyp/common/hash.hpp"
#include "iyp/common/text.hpp"
#include "iyp/retrieval/text_to_cypher.hpp"

namespace iyp::eval {

std::string serialize_rows(const cypher::RowSet& rows, std::size_t max_rows) {
    if (rows.rows.empty()) {
        return "(no rows)";
    }
    std::string out = "columns: " + join(rows.columns, ", ");
    const std::size_t shown = std::min(rows.rows.size(), max_rows);
    for (std::size_t i = 0; i < shown; ++i) {
        out += "\n" + std::to_string(i + 1) + ". " + retrieval::row_text(rows, i);
    }
    if (shown < rows.rows.size()) {
        out += "\n(" + std::to_string(rows.rows.size() - shown) + " more row(s) omitted)";
    }
    return out;
}

std::string reference_cache_key(const EvalRecord& record, const std::string& provider_id) {
    Fnv1a64 h;
    h.update(record.id).update_u64(0).update_u64(fnv1a64(record.gold_cypher)).update_u64(0).update(provider_id);
    return to_hex(h.digest());
}

ReferenceCache::ReferenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<std::string> ReferenceCache::get(const std::string& key) const {
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) {
        return std::nullopt;
    }
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("key", "") != key) {
        return std::nullopt;
    }
    const auto it = j.find("reference");
    if (it == j.end() || !it->is_string()) {
        return std::nullopt;
    }
    return it->get<std::string>();
}

void ReferenceCache::put(const std::string& key, const EvalRecord& record, const std::string& provider_id,
                         const std::string& reference) const {
    static std::atomic<unsigned> counter{0};
    const nlohmann::json entry{{"key", key},
                               {"record_id", record.id},
                               {"gold_hash", to_hex(fnv1a64(record.gold_cypher))},
                               {"provider", provider_id},
                               {"reference", reference}};
    std::ostringstream suffix;
    suffix << ".tmp." << std::this_thread::get_id() << "." << counter.fetch_add(1);
    const auto final_path = dir_ / (key + ".json");
    const auto tmp_path = dir_ / (key + suffix.str());
    {
        std::ofstream out(tmp_path, std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write reference cache entry " + tmp_path.string());
        }
        out << entry.dump(2) << "\n";
    }
    std::filesystem::rename(tmp_path, final_path);
}

std::string reference_answer(const EvalRecord& record, const cypher::QueryExecutor& executor,
                             const llm::PromptLibrary& prompts, const llm::Provider& provider,
                             const llm::ChatParams& params, const ReferenceOptions& options) {
    std::string key;
    if (options.cache != nullptr) {
        key = reference_cache_key(record, provider.id());
        if (auto hit = options.cache->get(key)) {
            return *hit;
        }
    }
    cypher::RowSet rows;
    try {
        rows = executor.run(record.gold_cypher);
    } catch (const std::exception& e) {
        throw UnevaluableError("gold query failed: " + std::string(e.what()));
    }
    const auto messages = llm::render_prompt(
        prompts.get("reference_answer"),
        {{"question", record.question}, {"cypher", record.gold_cypher}, {"rows", serialize_rows(rows, options.max_rows)}});
    std::string reference(trim(llm::chat(provider, messages, params).text));
    if (options.cache != nullptr) {
        options.cache->put(key, record, provider.id(), reference);
    }
    return reference;
}

}  // namespace iyp::eval
