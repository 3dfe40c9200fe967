// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/judge.hpp"

#include "iyp/common/text.hpp"

namespace iyp::eval {

std::string_view to_string(Criterion c) noexcept {
    switch (c) {
        case Criterion::factuality: return "factuality";
        case Criterion::relevance: return "relevance";
        case Criterion::informativeness: return "informativeness";
    }
    return "factuality";
}

std::optional<double> expected_rating(const std::vector<llm::TokenScore>& scores) {
    double mass = 0.0;
    double weighted = 0.0;
    for (const auto& s : scores) {
        const auto t = trim(s.token);
        if (t.size() == 1 && t[0] >= '1' && t[0] <= '5') {
            mass += s.probability;
            weighted += s.probability * (t[0] - '0');
        }
    }
    if (mass <= 0.0) {
        return std::nullopt;
    }
    return weighted / mass;
}

double normalize_rating(double rating) noexcept {
    return (rating - 1.0) / 4.0;
}

double JudgeScores::get(Criterion c) const noexcept {
    switch (c) {
        case Criterion::factuality: return factuality;
        case Criterion::relevance: return relevance;
        case Criterion::informativeness: return informativeness;
    }
    return 0.0;
}

JudgeScores judge_score(std::string_view question, std::string_view candidate, std::string_view reference,
                        const llm::PromptLibrary& prompts, const llm::Provider& provider,
                        const llm::ChatParams& params) {
    llm::ChatParams p = params;
    p.want_token_scores = true;
    JudgeScores out;
    double sum = 0.0;
    for (const Criterion c : kCriteria) {
        const std::string name(to_string(c));
        const auto messages = llm::render_prompt(prompts.get("judge_" + name),
                                                 {{"question", std::string(question)},
                                                  {"candidate", std::string(candidate)},
                                                  {"reference", std::string(reference)}});
        const llm::Completion reply = llm::chat(provider, messages, p);
        std::optional<double> rating;
        if (reply.token_scores) {
            rating = expected_rating(*reply.token_scores);
        }
        if (!rating) {
            if (const auto r = first_integer_in_range(reply.text, 1, 5)) {
                rating = *r;
            }
        }
        double score = 0.0;
        if (rating) {
            score = normalize_rating(*rating);
        } else {
            out.diagnostics.push_back(name + ": no 1-5 rating in the judge reply, scored 0");
        }
        switch (c) {
            case Criterion::factuality: out.factuality = score; break;
            case Criterion::relevance: out.relevance = score; break;
            case Criterion::informativeness: out.informativeness = score; break;
        }
        sum += score;
    }
    out.geval = sum / static_cast<double>(kCriteria.size());
    return out;
}

}  // namespace iyp::eval
