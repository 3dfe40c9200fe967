// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/tokenize.hpp"

#include <cctype>

namespace iyp::eval {

Tokens metric_tokenize(std::string_view text) {
    Tokens out;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) {
            out.push_back(std::move(word));
            word.clear();
        }
    };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const auto u = static_cast<unsigned char>(c);
        if (std::isspace(u)) {
            flush();
        } else if (u >= 0x80 || std::isalnum(u)) {
            word.push_back(static_cast<char>(std::tolower(u)));
        } else if (c == '.' && !word.empty() && is_digit(word.back()) && i + 1 < text.size() &&
                   is_digit(text[i + 1])) {
            word.push_back(c);
        } else {
            flush();
            out.emplace_back(1, c);
        }
    }
    flush();
    return out;
}

}  // namespace iyp::eval
