// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/retrieval/text_to_cypher.hpp"

#include "iyp/common/text.hpp"
#include "iyp/cypher/parser.hpp"
#include "iyp/cypher/read_only.hpp"
#include "iyp/cypher/remote.hpp"

namespace iyp::retrieval {

std::string extract_query(std::string_view completion) {
    std::string_view body = completion;
    if (const auto open = completion.find("```"); open != std::string_view::npos) {
        std::size_t start = open + 3;
        // Skip a language tag such as "cypher" up to the end of that line.
        const auto eol = completion.find('\n', start);
        const auto close = completion.find("```", start);
        if (eol != std::string_view::npos && (close == std::string_view::npos || eol < close)) {
            const auto tag = trim(completion.substr(start, eol - start));
            if (tag.find_first_of(" \t(") == std::string_view::npos) {
                start = eol + 1;
            }
        }
        body = close == std::string_view::npos ? completion.substr(start)
                                               : completion.substr(start, close - start);
    }
    std::string_view q = trim(body);
    while (!q.empty() && q.back() == ';') {
        q.remove_suffix(1);
        q = trim(q);
    }
    return std::string(q);
}

std::string format_examples(const std::vector<llm::FewShotExample>& examples) {
    std::string out;
    for (const auto& e : examples) {
        out += "Q: " + e.question + "\n```cypher\n" + e.cypher + "\n```\n";
    }
    if (out.empty()) {
        return "(none)";
    }
    out.pop_back();
    return out;
}

std::string text_to_cypher(std::string_view question, const graph::SchemaCatalog& schema,
                           const llm::PromptLibrary& prompts, const llm::Provider& provider,
                           const llm::ChatParams& params) {
    const auto messages = llm::render_prompt(prompts.get("text_to_cypher"),
                                             {{"schema", graph::describe(schema)},
                                              {"examples", format_examples(prompts.examples)},
                                              {"question", std::string(question)}});
    return extract_query(llm::chat(provider, messages, params).text);
}

std::string row_text(const cypher::RowSet& rows, std::size_t row) {
    std::string out;
    const auto& cells = rows.rows.at(row);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out += "; ";
        }
        out += rows.columns[i] + "=" + cypher::to_text(cells[i]);
    }
    return out;
}

CypherRetrieval cypher_retrieve(std::string_view question, const graph::SchemaCatalog& schema,
                                const cypher::QueryExecutor& executor,
                                const llm::PromptLibrary& prompts, const llm::Provider& provider,
                                const llm::ChatParams& params) {
    CypherRetrieval out;
    out.generated = text_to_cypher(question, schema, prompts, provider, params);
    const std::string& query = out.generated;
    if (query.empty()) {
        out.diagnostics.push_back("parse error: the model returned no query");
        return out;
    }
    try {
        if (const auto rejection = cypher::validate_read_only(query)) {
            out.diagnostics.push_back("read-only rejection: " + rejection->message);
            return out;
        }
        (void)cypher::parse(query);
    } catch (const cypher::QueryError& e) {
        out.diagnostics.push_back(std::string("parse error: ") + e.what());
        return out;
    }
    cypher::RowSet rows;
    try {
        rows = executor.run(query);
    } catch (const std::exception& e) {
        // Database failures degrade to the vector fallback like any other
        // unusable query.
        out.diagnostics.push_back(std::string("execution error: ") + e.what());
        return out;
    }
    out.executed_cypher = query;
    out.diagnostics.push_back(std::to_string(rows.rows.size()) + " row(s) from " + executor.name());
    for (std::size_t i = 0; i < rows.rows.size(); ++i) {
        std::string text = row_text(rows, i);
        if (text.empty()) {
            continue;
        }
        out.candidates.push_back({Source::cypher, std::move(text), 1.0, CypherProvenance{query, i}, {}});
    }
    return out;
}

}  // namespace iyp::retrieval
