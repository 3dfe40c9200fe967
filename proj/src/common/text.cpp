// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/common/text.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace iyp {

namespace {
bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
}  // namespace

std::string_view trim(std::string_view text) noexcept {
    while (!text.empty() && is_space(text.front())) {
        text.remove_prefix(1);
    }
    while (!text.empty() && is_space(text.back())) {
        text.remove_suffix(1);
    }
    return text;
}

std::string to_lower_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "NaN";
    }
    if (std::isinf(value)) {
        return value > 0 ? "Infinity" : "-Infinity";
    }
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string out(buf.data(), end);
    if (out.find_first_of(".eE") == std::string::npos) {
        out += ".0";
    }
    return out;
}

std::optional<int> first_integer_in_range(std::string_view text, int lo, int hi) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_digit(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_digit(text[j])) {
            ++j;
        }
        // Skip digits glued to a decimal point ("4.5" is not the integer 4).
        const bool fractional = (j < text.size() && text[j] == '.' && j + 1 < text.size() &&
                                 is_digit(text[j + 1])) ||
                                (i > 0 && text[i - 1] == '.');
        if (!fractional && j - i <= 6) {
            int value = 0;
            std::from_chars(text.data() + i, text.data() + j, value);
            if (value >= lo && value <= hi) {
                return value;
            }
        }
        i = j;
    }
    return std::nullopt;
}

}  // namespace iyp
