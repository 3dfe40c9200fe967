// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/report.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "iyp/common/text.hpp"

namespace iyp::eval {

namespace {

using nlohmann::json;

json prf_json(const PRF& p) {
    return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

json stats_json(const BoxStats& s) {
    return {{"count", s.count}, {"min", s.min},   {"q1", s.q1},    {"median", s.median},
            {"q3", s.q3},       {"max", s.max},   {"mean", s.mean}};
}

json scores_json(const MetricScores& s) {
    json out = json::object();
    if (s.bleu) {
        out["bleu"] = *s.bleu;
    }
    if (s.rouge1) {
        out["rouge1"] = prf_json(*s.rouge1);
    }
    if (s.rouge2) {
        out["rouge2"] = prf_json(*s.rouge2);
    }
    if (s.rougeL) {
        out["rougeL"] = prf_json(*s.rougeL);
    }
    if (s.embed) {
        out["embed"] = prf_json(*s.embed);
    }
    if (s.geval) {
        out["geval"] = {{"score", s.geval->geval},
                        {"factuality", s.geval->factuality},
                        {"relevance", s.geval->relevance},
                        {"informativeness", s.geval->informativeness},
                        {"diagnostics", s.geval->diagnostics}};
    }
    return out;
}

std::string difficulty_label(const GroupKey& k) {
    return k.difficulty ? std::string(to_string(*k.difficulty)) : "all";
}

std::string domain_label(const GroupKey& k) {
    return k.domain ? std::string(to_string(*k.domain)) : "all";
}

json groups_json(const std::vector<Group>& groups) {
    json out = json::array();
    for (const auto& g : groups) {
        json metrics = json::object();
        for (const auto& [name, s] : g.metrics) {
            metrics[name] = stats_json(s);
        }
        out.push_back({{"difficulty", difficulty_label(g.key)},
                       {"domain", domain_label(g.key)},
                       {"records", g.record_ids},
                       {"metrics", std::move(metrics)}});
    }
    return out;
}

}  // namespace

json report_to_json(const MetricReport& report) {
    json per_record = json::object();
    for (const auto& r : report.records) {
        per_record[r.record.id] = {{"question", r.record.question},
                                   {"difficulty", to_string(r.record.difficulty)},
                                   {"domain", to_string(r.record.domain)},
                                   {"answer", r.answer},
                                   {"cypher", r.cypher ? json(*r.cypher) : json(nullptr)},
                                   {"reference", r.reference},
                                   {"scores", scores_json(r.scores)}};
    }
    json unevaluable = json::array();
    for (const auto& u : report.unevaluable) {
        unevaluable.push_back({{"id", u.id}, {"reason", u.reason}});
    }
    return {{"config", report.config},
            {"per_record", std::move(per_record)},
            {"unevaluable", std::move(unevaluable)},
            {"groups", groups_json(report.groups)},
            {"by_difficulty", groups_json(report.by_difficulty)}};
}

std::string groups_csv(const MetricReport& report) {
    std::string out = "difficulty,domain,metric,count,min,q1,median,q3,max,mean\n";
    auto emit = [&](const std::vector<Group>& groups) {
        for (const auto& g : groups) {
            for (const auto& [name, s] : g.metrics) {
                out += difficulty_label(g.key) + "," + domain_label(g.key) + "," + name + "," +
                       std::to_string(s.count);
                for (const double v : {s.min, s.q1, s.median, s.q3, s.max, s.mean}) {
                    out += "," + format_double(v);
                }
                out += "\n";
            }
        }
    };
    emit(report.groups);
    emit(report.by_difficulty);
    return out;
}

std::string summary_table(const MetricReport& report) {
    static const char* const kHeadline[] = {"bleu", "rougeL_f1", "embed_f1", "geval"};
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %-10s %4s", "level", "domain", "n");
    out += line;
    for (const char* m : kHeadline) {
        std::snprintf(line, sizeof line, " %12s", m);
        out += line;
    }
    out += "\n";
    auto emit = [&](const std::vector<Group>& groups) {
        for (const auto& g : groups) {
            std::snprintf(line, sizeof line, "%-8s %-10s %4zu", difficulty_label(g.key).c_str(),
                          domain_label(g.key).c_str(), g.record_ids.size());
            out += line;
            for (const char* m : kHeadline) {
                const auto it = g.metrics.find(m);
                if (it == g.metrics.end()) {
                    std::snprintf(line, sizeof line, " %12s", "-");
                } else {
                    std::snprintf(line, sizeof line, " %12.4f", it->second.median);
                }
                out += line;
            }
            out += "\n";
        }
    };
    emit(report.groups);
    emit(report.by_difficulty);
    out += "(median per group; " + std::to_string(report.unevaluable.size()) + " unevaluable record(s))\n";
    return out;
}

std::filesystem::path write_report(const MetricReport& report, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write report " + path.string());
        }
        out << report_to_json(report).dump(2) << "\n";
    }
    auto csv_path = path;
    csv_path.replace_extension(".csv");
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) {
        throw std::runtime_error("cannot write report " + csv_path.string());
    }
    csv << groups_csv(report);
    return csv_path;
}

}  // namespace iyp::eval
