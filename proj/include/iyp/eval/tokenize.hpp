// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace iyp::eval {

using Tokens = std::vector<std::string>;

/// Lowercased; split on whitespace; each ASCII punctuation character is its
/// own token, except a '.' between two digits, which stays inside the
/// number ("52.0"). Bytes >= 0x80 are treated as word characters.
[[nodiscard]] Tokens metric_tokenize(std::string_view text);

}  // namespace iyp::eval
