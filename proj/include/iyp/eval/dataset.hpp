// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iyp::eval {

enum class Difficulty { easy, medium, hard };
enum class Domain { general, technical };

[[nodiscard]] std::string_view to_string(Difficulty d) noexcept;
[[nodiscard]] std::string_view to_string(Domain d) noexcept;
[[nodiscard]] std::optional<Difficulty> parse_difficulty(std::string_view text) noexcept;
[[nodiscard]] std::optional<Domain> parse_domain(std::string_view text) noexcept;

struct EvalRecord {
    std::string id;
    std::string question;
    std::string gold_cypher;
    Difficulty difficulty = Difficulty::easy;
    Domain domain = Domain::general;
    friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

class DatasetError : public std::runtime_error {
public:
    DatasetError(const std::string& message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// JSONL, one record per non-blank line. Rejects malformed lines, missing
/// or mistyped fields, unknown difficulty/domain, duplicate ids and gold
/// queries containing write clauses. Unparseable gold queries are accepted
/// here and reported as unevaluable by the evaluation run.
[[nodiscard]] std::vector<EvalRecord> parse_dataset(std::istream& in);
[[nodiscard]] std::vector<EvalRecord> load_dataset(const std::filesystem::path& path);

}  // namespace iyp::eval
