// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "iyp/cypher/ast.hpp"

namespace iyp::cypher {

/// Canonical text: uppercase keywords, single spaces, `{key: value}` maps,
/// single-quoted strings, and only the parentheses the tree needs.
/// parse(render(q)) == q for every parsed q.
[[nodiscard]] std::string render(const Query& query);
[[nodiscard]] std::string render(const Projection& projection);
[[nodiscard]] std::string render(const BoolExpr& expr);

/// Alias if present, otherwise the rendered projection ("p.percent").
[[nodiscard]] std::string column_name(const ReturnItem& item);

}  // namespace iyp::cypher
