// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/embedding_score.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "iyp/llm/hash_embedding.hpp"

namespace iyp::eval {

PRF embedding_score(std::string_view candidate, std::string_view reference, const llm::Provider& provider) {
    const Tokens cand = metric_tokenize(candidate);
    const Tokens ref = metric_tokenize(reference);
    if (cand.empty() || ref.empty()) {
        throw std::invalid_argument("embedding score needs at least one token on each side");
    }
    std::map<std::string, std::size_t> slot;
    std::vector<std::string> unique;
    for (const Tokens* side : {&cand, &ref}) {
        for (const auto& t : *side) {
            if (slot.emplace(t, unique.size()).second) {
                unique.push_back(t);
            }
        }
    }
    const auto vectors = llm::embed(provider, unique);
    auto sim = [&](const std::string& a, const std::string& b) {
        return std::max(0.0, llm::cosine(vectors[slot.at(a)], vectors[slot.at(b)]));
    };
    auto greedy = [&](const Tokens& from, const Tokens& to) {
        double sum = 0.0;
        for (const auto& t : from) {
            double best = 0.0;
            for (const auto& u : to) {
                best = std::max(best, sim(t, u));
            }
            sum += best;
        }
        return std::clamp(sum / static_cast<double>(from.size()), 0.0, 1.0);
    };
    PRF out;
    out.recall = greedy(ref, cand);
    out.precision = greedy(cand, ref);
    out.f1 = std::clamp(f1_of(out.precision, out.recall), 0.0, 1.0);
    return out;
}

}  // namespace iyp::eval
