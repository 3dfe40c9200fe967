// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "iyp/cypher/query_executor.hpp"
#include "iyp/eval/dataset.hpp"
#include "iyp/llm/prompt.hpp"
#include "iyp/llm/provider.hpp"

namespace iyp::eval {

/// The gold query could not be executed; the record is skipped.
class UnevaluableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "columns: a, b" then one "1. a=..; b=.." line per row up to max_rows and
/// a line counting omitted rows; "(no rows)" for an empty result.
[[nodiscard]] std::string serialize_rows(const cypher::RowSet& rows, std::size_t max_rows);

/// Hex digest of (record id, gold query hash, provider id).
[[nodiscard]] std::string reference_cache_key(const EvalRecord& record, const std::string& provider_id);

/// Directory of <key>.json files. Writes go through a temporary file and a
/// rename, so concurrent readers never see partial entries.
class ReferenceCache {
public:
    explicit ReferenceCache(std::filesystem::path dir);
    [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const EvalRecord& record, const std::string& provider_id,
             const std::string& reference) const;
    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path dir_;
};

struct ReferenceOptions {
    std::size_t max_rows = 50;
    const ReferenceCache* cache = nullptr;
};

/// Executes the gold query (failure: UnevaluableError) and asks the model
/// for a reference answer from the question and serialized rows. Cached
/// answers skip both steps. Provider errors propagate.
[[nodiscard]] std::string reference_answer(const EvalRecord& record,
                                           const cypher::QueryExecutor& executor,
                                           const llm::PromptLibrary& prompts,
                                           const llm::Provider& provider,
                                           const llm::ChatParams& params,
                                           const ReferenceOptions& options = {});

}  // namespace iyp::eval
