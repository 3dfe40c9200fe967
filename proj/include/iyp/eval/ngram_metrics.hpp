// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>

#include "iyp/eval/tokenize.hpp"

namespace iyp::eval {

struct PRF {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    friend bool operator==(const PRF&, const PRF&) = default;
};

/// Harmonic mean, 0 when both are 0.
[[nodiscard]] double f1_of(double precision, double recall) noexcept;

/// Sentence BLEU: clipped n-gram precisions, add-1 smoothing for n >= 2,
/// geometric mean, brevity penalty. Empty candidate scores 0. Throws
/// std::invalid_argument for max_n < 1.
[[nodiscard]] double bleu(const Tokens& candidate, const Tokens& reference, int max_n = 4);
[[nodiscard]] double bleu(std::string_view candidate, std::string_view reference, int max_n = 4);

/// Clipped n-gram overlap. An empty side (no n-grams) gives all zeros.
[[nodiscard]] PRF rouge_n(const Tokens& candidate, const Tokens& reference, int n);
[[nodiscard]] PRF rouge_n(std::string_view candidate, std::string_view reference, int n);

[[nodiscard]] std::size_t lcs_length(const Tokens& a, const Tokens& b);
[[nodiscard]] PRF rouge_l(const Tokens& candidate, const Tokens& reference);
[[nodiscard]] PRF rouge_l(std::string_view candidate, std::string_view reference);

}  // namespace iyp::eval
