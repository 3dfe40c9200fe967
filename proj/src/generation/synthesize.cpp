// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/generation/synthesize.hpp"

#include <nlohmann/json.hpp>

#include "iyp/retrieval/text_to_cypher.hpp"

namespace iyp::generation {

namespace {

/// End (one past the closing brace) of the object starting at `open`, or
/// npos when the braces never balance. Braces inside strings are ignored.
std::size_t match_object(std::string_view s, std::size_t open) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = open; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}' && --depth == 0) {
            return i + 1;
        }
    }
    return std::string_view::npos;
}

}  // namespace

Answer parse_model_output(std::string_view completion, const std::optional<std::string>& fallback_cypher) {
    Answer out;
    out.raw_completion = std::string(completion);
    for (std::size_t open = completion.find('{'); open != std::string_view::npos;
         open = completion.find('{', open + 1)) {
        const std::size_t end = match_object(completion, open);
        if (end == std::string_view::npos) {
            continue;
        }
        const auto j = nlohmann::json::parse(completion.substr(open, end - open), nullptr, false);
        if (!j.is_object()) {
            continue;
        }
        const auto answer = j.find("answer");
        if (answer == j.end() || !answer->is_string() || answer->get<std::string>().empty()) {
            continue;
        }
        out.text = answer->get<std::string>();
        const auto cypher = j.find("cypher");
        if (cypher != j.end() && cypher->is_string()) {
            std::string q = retrieval::extract_query(cypher->get<std::string>());
            if (!q.empty()) {
                out.refined_cypher = std::move(q);
            }
        }
        if (!out.refined_cypher) {
            out.refined_cypher = fallback_cypher;
        }
        return out;
    }
    out.text = std::string(completion);
    out.refined_cypher = fallback_cypher;
    return out;
}

std::string format_context(const std::vector<retrieval::RetrievalCandidate>& candidates) {
    if (candidates.empty()) {
        return "No context was found in the graph for this question.";
    }
    std::string out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        out += std::to_string(i + 1) + ". [" + std::string(retrieval::to_string(candidates[i].source)) +
               "] " + candidates[i].text;
        if (i + 1 < candidates.size()) {
            out += '\n';
        }
    }
    return out;
}

Answer synthesize(std::string_view question, const retrieval::RetrievalResult& retrieval,
                  const llm::PromptLibrary& prompts, const llm::Provider& provider,
                  const llm::ChatParams& params) {
    const auto messages = llm::render_prompt(
        prompts.get("synthesize"),
        {{"question", std::string(question)},
         {"context", format_context(retrieval.candidates)},
         {"cypher", retrieval.executed_cypher.value_or("(none)")}});
    return parse_model_output(llm::chat(provider, messages, params).text, retrieval.executed_cypher);
}

}  // namespace iyp::generation
