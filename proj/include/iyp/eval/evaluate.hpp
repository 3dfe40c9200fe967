// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "iyp/cypher/query_executor.hpp"
#include "iyp/eval/dataset.hpp"
#include "iyp/eval/judge.hpp"
#include "iyp/eval/ngram_metrics.hpp"
#include "iyp/eval/reference.hpp"
#include "iyp/eval/stats.hpp"
#include "iyp/generation/synthesize.hpp"

namespace iyp::eval {

struct MetricSelection {
    bool bleu = true;
    bool rouge = true;
    bool embed = true;
    bool geval = true;
    friend bool operator==(const MetricSelection&, const MetricSelection&) = default;
};

/// Comma-separated subset of bleu, rouge, embed, geval. Throws
/// std::invalid_argument for unknown or empty lists.
[[nodiscard]] MetricSelection parse_metrics(std::string_view list);
[[nodiscard]] std::string to_string(const MetricSelection& m);

struct MetricScores {
    std::optional<double> bleu;
    std::optional<PRF> rouge1;
    std::optional<PRF> rouge2;
    std::optional<PRF> rougeL;
    std::optional<PRF> embed;
    std::optional<JudgeScores> geval;

    /// Flat metric name -> value, enabled metrics only: bleu, rouge1_f1,
    /// rouge2_f1, rougeL_f1, embed_p, embed_r, embed_f1, geval,
    /// geval_factuality, geval_relevance, geval_informativeness.
    [[nodiscard]] std::map<std::string, double> flatten() const;
};

struct RecordResult {
    EvalRecord record;
    std::string answer;
    std::optional<std::string> cypher;
    std::string reference;
    MetricScores scores;
};

struct Unevaluable {
    std::string id;
    std::string reason;
};

struct GroupKey {
    std::optional<Difficulty> difficulty;
    std::optional<Domain> domain;
    friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

struct Group {
    GroupKey key;
    std::vector<std::string> record_ids;
    std::map<std::string, BoxStats> metrics;
};

enum class GroupField { difficulty, domain };

struct MetricReport {
    std::vector<RecordResult> records;  // id order
    std::vector<Unevaluable> unevaluable;
    std::vector<Group> groups;          // difficulty x domain
    std::vector<Group> by_difficulty;
    nlohmann::json config;              // self-describing metric choices
};

/// Partition the records by the given fields; BoxStats per metric present.
[[nodiscard]] std::vector<Group> aggregate(const std::vector<RecordResult>& records,
                                           const std::vector<GroupField>& group_by);

/// Produces the system answer for one record (the full ask pipeline).
using SystemUnderTest = std::function<generation::Answer(const EvalRecord&)>;

struct EvalProviders {
    const llm::Provider& reference;
    const llm::Provider& judge;
    const llm::Provider& embed;
};

struct EvalConfig {
    MetricSelection metrics;
    std::size_t parallelism = 4;
    std::size_t max_rows = 50;
    int bleu_max_n = 4;
    llm::ChatParams params;
    const ReferenceCache* cache = nullptr;
};

/// Scores every record; a record whose reference or answer cannot be
/// produced is listed as unevaluable instead. Throws std::invalid_argument
/// for an empty dataset.
[[nodiscard]] MetricReport evaluate(const std::vector<EvalRecord>& dataset, const SystemUnderTest& system,
                                    const cypher::QueryExecutor& executor,
                                    const llm::PromptLibrary& prompts, const EvalProviders& providers,
                                    const EvalConfig& config = {});

}  // namespace iyp::eval
