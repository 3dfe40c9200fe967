// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

#include "iyp/common/parallel.hpp"
#include "iyp/common/text.hpp"
#include "iyp/eval/embedding_score.hpp"
#include "iyp/eval/tokenize.hpp"

namespace iyp::eval {

MetricSelection parse_metrics(std::string_view list) {
    MetricSelection m{false, false, false, false};
    bool any = false;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const auto name = trim(list.substr(start, comma - start));
        if (name == "bleu") {
            m.bleu = true;
        } else if (name == "rouge") {
            m.rouge = true;
        } else if (name == "embed") {
            m.embed = true;
        } else if (name == "geval") {
            m.geval = true;
        } else {
            throw std::invalid_argument("unknown metric '" + std::string(name) +
                                        "' (expected bleu, rouge, embed, geval)");
        }
        any = true;
        start = comma + 1;
    }
    if (!any) {
        throw std::invalid_argument("empty metric list");
    }
    return m;
}

std::string to_string(const MetricSelection& m) {
    std::vector<std::string> parts;
    if (m.bleu) {
        parts.emplace_back("bleu");
    }
    if (m.rouge) {
        parts.emplace_back("rouge");
    }
    if (m.embed) {
        parts.emplace_back("embed");
    }
    if (m.geval) {
        parts.emplace_back("geval");
    }
    return join(parts, ",");
}

std::map<std::string, double> MetricScores::flatten() const {
    std::map<std::string, double> out;
    if (bleu) {
        out["bleu"] = *bleu;
    }
    if (rouge1) {
        out["rouge1_f1"] = rouge1->f1;
    }
    if (rouge2) {
        out["rouge2_f1"] = rouge2->f1;
    }
    if (rougeL) {
        out["rougeL_f1"] = rougeL->f1;
    }
    if (embed) {
        out["embed_p"] = embed->precision;
        out["embed_r"] = embed->recall;
        out["embed_f1"] = embed->f1;
    }
    if (geval) {
        out["geval"] = geval->geval;
        for (const Criterion c : kCriteria) {
            out["geval_" + std::string(to_string(c))] = geval->get(c);
        }
    }
    return out;
}

std::vector<Group> aggregate(const std::vector<RecordResult>& records, const std::vector<GroupField>& group_by) {
    const bool by_difficulty = std::find(group_by.begin(), group_by.end(), GroupField::difficulty) != group_by.end();
    const bool by_domain = std::find(group_by.begin(), group_by.end(), GroupField::domain) != group_by.end();
    std::map<GroupKey, std::vector<const RecordResult*>> buckets;
    for (const auto& r : records) {
        GroupKey key;
        if (by_difficulty) {
            key.difficulty = r.record.difficulty;
        }
        if (by_domain) {
            key.domain = r.record.domain;
        }
        buckets[key].push_back(&r);
    }
    std::vector<Group> out;
    for (const auto& [key, members] : buckets) {
        Group g;
        g.key = key;
        std::map<std::string, std::vector<double>> values;
        for (const RecordResult* r : members) {
            g.record_ids.push_back(r->record.id);
            for (const auto& [name, v] : r->scores.flatten()) {
                values[name].push_back(v);
            }
        }
        for (auto& [name, vs] : values) {
            g.metrics.emplace(name, box_stats(std::move(vs)));
        }
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

MetricScores score_record(const EvalRecord& record, const std::string& answer, const std::string& reference,
                          const llm::PromptLibrary& prompts, const EvalProviders& providers,
                          const EvalConfig& config) {
    MetricScores s;
    const Tokens cand = metric_tokenize(answer);
    const Tokens ref = metric_tokenize(reference);
    if (config.metrics.bleu) {
        s.bleu = bleu(cand, ref, config.bleu_max_n);
    }
    if (config.metrics.rouge) {
        s.rouge1 = rouge_n(cand, ref, 1);
        s.rouge2 = rouge_n(cand, ref, 2);
        s.rougeL = rouge_l(cand, ref);
    }
    if (config.metrics.embed) {
        s.embed = cand.empty() || ref.empty() ? PRF{} : embedding_score(answer, reference, providers.embed);
    }
    if (config.metrics.geval) {
        s.geval = judge_score(record.question, answer, reference, prompts, providers.judge, config.params);
    }
    return s;
}

nlohmann::json config_snapshot(const EvalConfig& config, const EvalProviders& providers) {
    return {
        {"metrics", to_string(config.metrics)},
        {"max_rows", config.max_rows},
        {"temperature", config.params.temperature},
        {"tokenizer", "lowercase; whitespace split; punctuation as single tokens; decimals kept whole"},
        {"reference_provider", providers.reference.id()},
        {"bleu", {{"variant", "sentence"}, {"max_n", config.bleu_max_n},
                  {"smoothing", "add-one for n >= 2"}, {"brevity_penalty", true}}},
        {"rouge", {{"variants", {"rouge1", "rouge2", "rougeL"}}, {"statistic", "f1"}}},
        {"embed", {{"variant", "greedy token cosine matching"}, {"provider", providers.embed.id()}}},
        {"geval", {{"criteria", {"factuality", "relevance", "informativeness"}},
                   {"scale", "1-5 normalized to (r-1)/4"},
                   {"aggregation", "probability-weighted over digit tokens, else first digit in reply"},
                   {"provider", providers.judge.id()}}},
    };
}

}  // namespace

MetricReport evaluate(const std::vector<EvalRecord>& dataset, const SystemUnderTest& system,
                      const cypher::QueryExecutor& executor, const llm::PromptLibrary& prompts,
                      const EvalProviders& providers, const EvalConfig& config) {
    if (dataset.empty()) {
        throw std::invalid_argument("evaluation dataset is empty");
    }
    struct Slot {
        std::optional<RecordResult> result;
        std::optional<Unevaluable> skipped;
    };
    std::vector<Slot> slots(dataset.size());
    const ReferenceOptions ref_options{config.max_rows, config.cache};
    parallel_for(dataset.size(), config.parallelism, [&](std::size_t i) {
        const EvalRecord& record = dataset[i];
        std::string stage = "reference";
        try {
            std::string reference =
                reference_answer(record, executor, prompts, providers.reference, config.params, ref_options);
            stage = "system";
            generation::Answer answer = system(record);
            stage = "metrics";
            MetricScores scores = score_record(record, answer.text, reference, prompts, providers, config);
            slots[i].result = RecordResult{record, std::move(answer.text), std::move(answer.refined_cypher),
                                           std::move(reference), std::move(scores)};
        } catch (const std::exception& e) {
            slots[i].skipped = Unevaluable{record.id, stage + ": " + e.what()};
        }
    });
    MetricReport report;
    for (auto& s : slots) {
        if (s.result) {
            report.records.push_back(std::move(*s.result));
        } else {
            report.unevaluable.push_back(std::move(*s.skipped));
        }
    }
    std::sort(report.records.begin(), report.records.end(),
              [](const RecordResult& a, const RecordResult& b) { return a.record.id < b.record.id; });
    std::sort(report.unevaluable.begin(), report.unevaluable.end(),
              [](const Unevaluable& a, const Unevaluable& b) { return a.id < b.id; });
    report.groups = aggregate(report.records, {GroupField::difficulty, GroupField::domain});
    report.by_difficulty = aggregate(report.records, {GroupField::difficulty});
    report.config = config_snapshot(config, providers);
    return report;
}

}  // namespace iyp::eval
