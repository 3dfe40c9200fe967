// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iyp {

[[nodiscard]] std::string_view trim(std::string_view text) noexcept;
[[nodiscard]] std::string to_lower_ascii(std::string_view text);
[[nodiscard]] std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Shortest round-trip decimal form of a double; integral values keep a
/// trailing ".0" so the text still reads as a float (52.0, not 52).
[[nodiscard]] std::string format_double(double value);

/// First maximal run of ASCII digits whose value lies in [lo, hi].
[[nodiscard]] std::optional<int> first_integer_in_range(std::string_view text, int lo, int hi);

}  // namespace iyp
