// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "iyp/cypher/ast.hpp"
#include "iyp/cypher/errors.hpp"

namespace iyp::cypher {

struct Rejection {
    std::string keyword;  // uppercase, e.g. "CREATE"
    std::string message;
};

class ReadOnlyViolation : public QueryError {
public:
    explicit ReadOnlyViolation(Rejection rejection)
        : QueryError(rejection.message), rejection_(std::move(rejection)) {}
    [[nodiscard]] const Rejection& rejection() const noexcept { return rejection_; }

private:
    Rejection rejection_;
};

/// nullopt means the query is read-only. A forbidden keyword counts when it
/// is an unquoted identifier in clause position: not inside a string, not a
/// label/type/key (after ':' or '.'), and not a map key or variable name
/// followed by ':' or '.'. Unlexable text throws SyntaxError.
[[nodiscard]] std::optional<Rejection> validate_read_only(std::string_view query_text);

/// Parsed queries are read-only by construction.
[[nodiscard]] std::optional<Rejection> validate_read_only(const Query& query) noexcept;

/// Throws ReadOnlyViolation (or SyntaxError) unless the text is read-only.
void require_read_only(std::string_view query_text);

}  // namespace iyp::cypher
