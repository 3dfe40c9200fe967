// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/retrieval/rerank.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "iyp/common/parallel.hpp"
#include "iyp/common/text.hpp"

namespace iyp::retrieval {

std::optional<int> parse_relevance(std::string_view completion) {
    return first_integer_in_range(completion, 0, 10);
}

RerankResult rerank(std::string_view question, const std::vector<RetrievalCandidate>& candidates,
                    const llm::PromptLibrary& prompts, const llm::Provider& provider,
                    const llm::ChatParams& params, std::size_t n, std::size_t parallelism) {
    if (candidates.empty()) {
        throw std::invalid_argument("rerank requires at least one candidate");
    }
    if (n == 0) {
        throw std::invalid_argument("rerank requires n >= 1");
    }
    const llm::PromptTemplate& tmpl = prompts.get("rerank");
    std::vector<std::optional<int>> scores(candidates.size());
    parallel_for(candidates.size(), parallelism, [&](std::size_t i) {
        const auto messages = llm::render_prompt(
            tmpl, {{"question", std::string(question)}, {"candidate", candidates[i].text}});
        scores[i] = parse_relevance(llm::chat(provider, messages, params).text);
    });

    RerankResult out;
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!scores[i]) {
            out.diagnostics.push_back("candidate " + std::to_string(i) +
                                      ": no relevance score in the reply, scored 0");
        }
    }
    auto relevance = [&](std::size_t i) { return scores[i].value_or(0); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (relevance(a) != relevance(b)) {
            return relevance(a) > relevance(b);
        }
        return candidates[a].score > candidates[b].score;
    });
    order.resize(std::min(n, order.size()));
    for (const std::size_t i : order) {
        RetrievalCandidate c = candidates[i];
        c.relevance = relevance(i);
        out.candidates.push_back(std::move(c));
    }
    return out;
}

}  // namespace iyp::retrieval
