// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/llm/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace iyp::llm {

using nlohmann::json;

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Calls on_marker(name) for each {identifier} marker and on_text for the
/// spans between; returns nothing, the callbacks build the result.
template <typename Text, typename Marker>
void scan(const std::string& s, Text on_text, Marker on_marker) {
    std::size_t i = 0;
    std::size_t plain = 0;
    while (i < s.size()) {
        if (s[i] == '{' && i + 1 < s.size() && ident_start(s[i + 1])) {
            std::size_t j = i + 1;
            while (j < s.size() && ident_char(s[j])) {
                ++j;
            }
            if (j < s.size() && s[j] == '}') {
                on_text(std::string_view(s).substr(plain, i - plain));
                on_marker(s.substr(i + 1, j - i - 1));
                i = j + 1;
                plain = i;
                continue;
            }
        }
        ++i;
    }
    on_text(std::string_view(s).substr(plain));
}

}  // namespace

PromptTemplate template_from_json(const json& j) {
    PromptTemplate t;
    try {
        t.id = j.at("id").get<std::string>();
        t.version = j.value("version", 1);
        t.required_slots = j.value("required_slots", std::vector<std::string>{});
        for (const auto& m : j.at("messages")) {
            t.messages.push_back(message_from_json(m));
        }
    } catch (const std::exception& e) {
        throw PromptError(std::string("invalid prompt template: ") + e.what());
    }
    if (t.messages.empty()) {
        throw PromptError("prompt template '" + t.id + "' has no messages");
    }
    std::set<std::string> used;
    for (const auto& m : t.messages) {
        scan(m.content, [](std::string_view) {}, [&](std::string name) { used.insert(std::move(name)); });
    }
    const std::set<std::string> declared(t.required_slots.begin(), t.required_slots.end());
    for (const auto& name : used) {
        if (!declared.contains(name)) {
            throw PromptError("prompt template '" + t.id + "' uses undeclared slot '" + name + "'");
        }
    }
    for (const auto& name : declared) {
        if (!used.contains(name)) {
            throw PromptError("prompt template '" + t.id + "' declares unused slot '" + name + "'");
        }
    }
    return t;
}

PromptTemplate load_template(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw PromptError("cannot open prompt template " + path.string());
    }
    try {
        return template_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw PromptError("prompt template " + path.string() + " is not JSON: " + e.what());
    }
}

std::vector<ChatMessage> render_prompt(const PromptTemplate& tmpl, const Slots& slots) {
    for (const auto& name : tmpl.required_slots) {
        if (!slots.contains(name)) {
            throw MissingSlotError(name);
        }
    }
    std::vector<ChatMessage> out;
    out.reserve(tmpl.messages.size());
    for (const auto& m : tmpl.messages) {
        std::string content;
        scan(
            m.content, [&](std::string_view text) { content += text; },
            [&](const std::string& name) {
                if (const auto it = slots.find(name); it != slots.end()) {
                    content += it->second;
                } else {
                    content += "{" + name + "}";
                }
            });
        out.push_back({m.role, std::move(content)});
    }
    return out;
}

PromptLibrary PromptLibrary::load_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw PromptError("prompt directory " + dir.string() + " does not exist");
    }
    PromptLibrary lib;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        PromptTemplate t = load_template(f);
        if (lib.contains(t.id)) {
            throw PromptError("duplicate prompt template id '" + t.id + "' in " + f.string());
        }
        lib.add(std::move(t));
    }
    const auto examples = dir / "cypher_examples.jsonl";
    if (std::filesystem::exists(examples)) {
        std::ifstream in(examples);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            try {
                const json j = json::parse(line);
                lib.examples.push_back(
                    {j.at("question").get<std::string>(), j.at("cypher").get<std::string>()});
            } catch (const json::exception& e) {
                throw PromptError(examples.string() + " line " + std::to_string(line_no) + ": " +
                                  e.what());
            }
        }
    }
    return lib;
}

void PromptLibrary::add(PromptTemplate tmpl) {
    std::string id = tmpl.id;
    templates_.insert_or_assign(std::move(id), std::move(tmpl));
}

bool PromptLibrary::contains(const std::string& id) const {
    return templates_.contains(id);
}

const PromptTemplate& PromptLibrary::get(const std::string& id) const {
    const auto it = templates_.find(id);
    if (it == templates_.end()) {
        throw PromptError("no prompt template with id '" + id + "'");
    }
    return it->second;
}

std::vector<std::string> PromptLibrary::ids() const {
    std::vector<std::string> out;
    for (const auto& [id, t] : templates_) {
        out.push_back(id);
    }
    return out;
}

const std::vector<std::string>& required_template_ids() {
    static const std::vector<std::string> k{
        "text_to_cypher",   "rerank",          "synthesize",           "reference_answer",
        "judge_factuality", "judge_relevance", "judge_informativeness",
    };
    return k;
}

}  // namespace iyp::llm
