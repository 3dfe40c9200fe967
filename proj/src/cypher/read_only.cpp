// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/read_only.hpp"

#include <array>

#include "iyp/common/text.hpp"
#include "iyp/cypher/lexer.hpp"

namespace iyp::cypher {

namespace {

constexpr std::array<std::string_view, 10> kForbidden = {
    "create", "merge", "delete", "detach", "set", "remove", "drop", "call", "load", "foreach"};

}  // namespace

std::optional<Rejection> validate_read_only(std::string_view query_text) {
    const auto tokens = tokenize(query_text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.kind != TokenKind::identifier) {
            continue;
        }
        const std::string lowered = to_lower_ascii(t.text);
        bool forbidden = false;
        for (auto kw : kForbidden) {
            forbidden = forbidden || lowered == kw;
        }
        if (!forbidden) {
            continue;
        }
        const TokenKind prev = i > 0 ? tokens[i - 1].kind : TokenKind::end;
        const TokenKind next = tokens[i + 1].kind;
        if (prev == TokenKind::colon || prev == TokenKind::dot || next == TokenKind::colon ||
            next == TokenKind::dot) {
            continue;
        }
        std::string upper = t.text;
        for (char& c : upper) {
            if (c >= 'a' && c <= 'z') {
                c = static_cast<char>(c - 'a' + 'A');
            }
        }
        return Rejection{upper, "write or procedure clause " + upper + " at line " +
                                    std::to_string(t.line) + ", column " +
                                    std::to_string(t.column) + " is not allowed"};
    }
    return std::nullopt;
}

std::optional<Rejection> validate_read_only(const Query&) noexcept { return std::nullopt; }

void require_read_only(std::string_view query_text) {
    if (auto rejection = validate_read_only(query_text)) {
        throw ReadOnlyViolation(std::move(*rejection));
    }
}

}  // namespace iyp::cypher
