// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "iyp/cypher/errors.hpp"

namespace iyp::cypher {

enum class TokenKind {
    identifier,
    quoted_identifier,  // `backticked`
    integer,
    floating,
    string,
    lparen,
    rparen,
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    colon,
    comma,
    dot,
    dash,
    lt,
    gt,
    eq,
    ne,
    le,
    ge,
    star,
    pipe,
    semicolon,
    end,
};

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;  // decoded for strings and quoted identifiers
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Always ends with a TokenKind::end token. Throws SyntaxError.
[[nodiscard]] std::vector<Token> tokenize(std::string_view query);

[[nodiscard]] std::string_view describe(TokenKind kind) noexcept;

}  // namespace iyp::cypher
