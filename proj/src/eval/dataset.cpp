// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/dataset.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "iyp/cypher/read_only.hpp"

namespace iyp::eval {

std::string_view to_string(Difficulty d) noexcept {
    switch (d) {
        case Difficulty::easy: return "easy";
        case Difficulty::medium: return "medium";
        case Difficulty::hard: return "hard";
    }
    return "easy";
}

std::string_view to_string(Domain d) noexcept {
    return d == Domain::general ? "general" : "technical";
}

std::optional<Difficulty> parse_difficulty(std::string_view text) noexcept {
    if (text == "easy") {
        return Difficulty::easy;
    }
    if (text == "medium") {
        return Difficulty::medium;
    }
    if (text == "hard") {
        return Difficulty::hard;
    }
    return std::nullopt;
}

std::optional<Domain> parse_domain(std::string_view text) noexcept {
    if (text == "general") {
        return Domain::general;
    }
    if (text == "technical") {
        return Domain::technical;
    }
    return std::nullopt;
}

namespace {

std::string string_field(const nlohmann::json& j, const char* key, std::size_t line) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
        throw DatasetError(std::string("field '") + key + "' must be a string", line);
    }
    return it->get<std::string>();
}

}  // namespace

std::vector<EvalRecord> parse_dataset(std::istream& in) {
    std::vector<EvalRecord> out;
    std::set<std::string> ids;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw DatasetError(std::string("malformed JSON: ") + e.what(), line);
        }
        if (!j.is_object()) {
            throw DatasetError("record must be a JSON object", line);
        }
        EvalRecord r;
        r.id = string_field(j, "id", line);
        r.question = string_field(j, "question", line);
        r.gold_cypher = string_field(j, "gold_cypher", line);
        const std::string difficulty = string_field(j, "difficulty", line);
        const std::string domain = string_field(j, "domain", line);
        if (r.id.empty()) {
            throw DatasetError("empty record id", line);
        }
        const auto d = parse_difficulty(difficulty);
        if (!d) {
            throw DatasetError("unknown difficulty '" + difficulty + "' (easy, medium, hard)", line);
        }
        const auto dom = parse_domain(domain);
        if (!dom) {
            throw DatasetError("unknown domain '" + domain + "' (general, technical)", line);
        }
        r.difficulty = *d;
        r.domain = *dom;
        try {
            if (const auto rejection = cypher::validate_read_only(r.gold_cypher)) {
                throw DatasetError("gold query of '" + r.id + "' is not read-only: " + rejection->message,
                                   line);
            }
        } catch (const cypher::SyntaxError&) {
            // Left for the run to report as unevaluable.
        }
        if (!ids.insert(r.id).second) {
            throw DatasetError("duplicate record id '" + r.id + "'", line);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<EvalRecord> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset " + path.string());
    }
    return parse_dataset(in);
}

}  // namespace iyp::eval
