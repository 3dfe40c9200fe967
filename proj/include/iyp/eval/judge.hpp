// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iyp/llm/prompt.hpp"
#include "iyp/llm/provider.hpp"

namespace iyp::eval {

enum class Criterion { factuality, relevance, informativeness };

inline constexpr std::array<Criterion, 3> kCriteria{Criterion::factuality, Criterion::relevance,
                                                    Criterion::informativeness};

[[nodiscard]] std::string_view to_string(Criterion c) noexcept;

/// Probability-weighted rating over tokens "1".."5" (whitespace ignored),
/// renormalized over the digit mass. nullopt when no digit token has mass.
[[nodiscard]] std::optional<double> expected_rating(const std::vector<llm::TokenScore>& scores);

/// (rating - 1) / 4.
[[nodiscard]] double normalize_rating(double rating) noexcept;

struct JudgeScores {
    double factuality = 0.0;
    double relevance = 0.0;
    double informativeness = 0.0;
    double geval = 0.0;  // mean of the three
    std::vector<std::string> diagnostics;

    [[nodiscard]] double get(Criterion c) const noexcept;
};

/// One judge call per criterion (question, candidate and reference in the
/// prompt). Token scores win over the reply text; an unusable reply scores
/// the criterion 0 with a diagnostic. Provider errors propagate.
[[nodiscard]] JudgeScores judge_score(std::string_view question, std::string_view candidate,
                                      std::string_view reference, const llm::PromptLibrary& prompts,
                                      const llm::Provider& provider, const llm::ChatParams& params);

}  // namespace iyp::eval
