// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iyp/llm/types.hpp"

namespace iyp::llm {

class PromptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingSlotError : public PromptError {
public:
    explicit MissingSlotError(std::string slot)
        : PromptError("missing prompt slot '" + slot + "'"), slot_(std::move(slot)) {}
    [[nodiscard]] const std::string& slot() const noexcept { return slot_; }

private:
    std::string slot_;
};

struct PromptTemplate {
    std::string id;
    int version = 1;
    std::vector<std::string> required_slots;
    std::vector<ChatMessage> messages;  // contents carry {slot} placeholders
};

using Slots = std::map<std::string, std::string>;

/// Validates that the placeholders used in the messages are exactly the
/// required slots, so a full render never leaves a marker behind.
[[nodiscard]] PromptTemplate template_from_json(const nlohmann::json& j);
[[nodiscard]] PromptTemplate load_template(const std::filesystem::path& path);

/// Single-pass substitution of {identifier} markers naming a slot; slot
/// values are inserted verbatim and never re-expanded. Other braces are
/// left alone. Throws MissingSlotError for an absent required slot.
[[nodiscard]] std::vector<ChatMessage> render_prompt(const PromptTemplate& tmpl, const Slots& slots);

/// A question/query pair used as a few-shot example in text_to_cypher.
struct FewShotExample {
    std::string question;
    std::string cypher;
};

/// The template files of a prompts directory plus its few-shot examples.
class PromptLibrary {
public:
    /// Loads every *.json template and, when present, cypher_examples.jsonl
    /// ({"question":..,"cypher":..} per line). Throws PromptError.
    [[nodiscard]] static PromptLibrary load_dir(const std::filesystem::path& dir);

    void add(PromptTemplate tmpl);
    [[nodiscard]] bool contains(const std::string& id) const;
    /// Throws PromptError naming an unknown id.
    [[nodiscard]] const PromptTemplate& get(const std::string& id) const;
    [[nodiscard]] std::vector<std::string> ids() const;

    std::vector<FewShotExample> examples;

private:
    std::map<std::string, PromptTemplate> templates_;
};

/// Template ids the pipeline depends on.
[[nodiscard]] const std::vector<std::string>& required_template_ids();

}  // namespace iyp::llm
