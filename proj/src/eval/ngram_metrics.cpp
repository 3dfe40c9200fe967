// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/ngram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace iyp::eval {

namespace {

using NgramCounts = std::map<Tokens, std::size_t>;

NgramCounts ngrams(const Tokens& t, int n) {
    NgramCounts out;
    const auto len = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + len <= t.size(); ++i) {
        ++out[Tokens(t.begin() + static_cast<std::ptrdiff_t>(i),
                     t.begin() + static_cast<std::ptrdiff_t>(i + len))];
    }
    return out;
}

std::size_t total(const NgramCounts& c) {
    std::size_t n = 0;
    for (const auto& [g, k] : c) {
        n += k;
    }
    return n;
}

std::size_t clipped_overlap(const NgramCounts& cand, const NgramCounts& ref) {
    std::size_t m = 0;
    for (const auto& [g, k] : cand) {
        if (const auto it = ref.find(g); it != ref.end()) {
            m += std::min(k, it->second);
        }
    }
    return m;
}

PRF prf(std::size_t overlap, std::size_t cand_total, std::size_t ref_total) {
    if (cand_total == 0 || ref_total == 0) {
        return {};
    }
    PRF r;
    r.precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
    r.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
    r.f1 = f1_of(r.precision, r.recall);
    return r;
}

}  // namespace

double f1_of(double precision, double recall) noexcept {
    const double sum = precision + recall;
    return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

double bleu(const Tokens& candidate, const Tokens& reference, int max_n) {
    if (max_n < 1) {
        throw std::invalid_argument("BLEU max_n must be at least 1");
    }
    if (candidate.empty()) {
        return 0.0;
    }
    double log_sum = 0.0;
    for (int n = 1; n <= max_n; ++n) {
        const auto cand = ngrams(candidate, n);
        const auto m = static_cast<double>(clipped_overlap(cand, ngrams(reference, n)));
        const auto t = static_cast<double>(total(cand));
        const double p = n == 1 ? m / t : (m + 1.0) / (t + 1.0);
        if (p == 0.0) {
            return 0.0;
        }
        log_sum += std::log(p);
    }
    const double c = static_cast<double>(candidate.size());
    const double r = static_cast<double>(reference.size());
    const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
    const double score = bp * std::exp(log_sum / max_n);
    return std::clamp(score, 0.0, 1.0);
}

double bleu(std::string_view candidate, std::string_view reference, int max_n) {
    return bleu(metric_tokenize(candidate), metric_tokenize(reference), max_n);
}

PRF rouge_n(const Tokens& candidate, const Tokens& reference, int n) {
    if (n < 1) {
        throw std::invalid_argument("ROUGE-N requires n >= 1");
    }
    const auto cand = ngrams(candidate, n);
    const auto ref = ngrams(reference, n);
    return prf(clipped_overlap(cand, ref), total(cand), total(ref));
}

PRF rouge_n(std::string_view candidate, std::string_view reference, int n) {
    return rouge_n(metric_tokenize(candidate), metric_tokenize(reference), n);
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

PRF rouge_l(const Tokens& candidate, const Tokens& reference) {
    return prf(lcs_length(candidate, reference), candidate.size(), reference.size());
}

PRF rouge_l(std::string_view candidate, std::string_view reference) {
    return rouge_l(metric_tokenize(candidate), metric_tokenize(reference));
}

}  // namespace iyp::eval
