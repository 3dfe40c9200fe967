// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "iyp/cypher/ast.hpp"
#include "iyp/cypher/errors.hpp"

namespace iyp::cypher {

/// Parses the read-only subset documented in docs/cypher-grammar.md.
/// Throws SyntaxError (with position) or SemanticError (unbound or
/// conflicting variables, ORDER BY keys outside an aggregating RETURN).
[[nodiscard]] Query parse(std::string_view query_text);

/// Reserved words cannot be used as bare variable names.
[[nodiscard]] bool is_reserved_word(std::string_view word) noexcept;

}  // namespace iyp::cypher
