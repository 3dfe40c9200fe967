// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iyp::cypher {

class QueryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lexical or grammatical error at a 1-based line/column.
class SyntaxError : public QueryError {
public:
    SyntaxError(const std::string& message, std::size_t line, std::size_t column,
                std::string token);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string& token() const noexcept { return token_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string token_;
};

/// Well-formed text that is not a valid query (unbound variable, ...).
class SemanticError : public QueryError {
public:
    using QueryError::QueryError;
};

}  // namespace iyp::cypher
