// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/llm/hash_embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "iyp/common/hash.hpp"

namespace iyp::llm {

namespace {

void add_direction(EmbeddingVector& acc, std::string_view token, std::uint64_t seed) {
    std::uint64_t state = Fnv1a64{}.update_u64(seed).update(token).digest();
    for (double& x : acc) {
        // 53 random bits mapped to [-1, 1).
        const double unit = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
        x += unit * 2.0 - 1.0;
    }
}

}  // namespace

void normalize(EmbeddingVector& v) noexcept {
    double sq = 0.0;
    for (double x : v) {
        sq += x * x;
    }
    if (sq == 0.0 || std::abs(sq - 1.0) <= 1e-12) {
        return;  // unit vectors stay bit-identical, so saved indexes round-trip
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (double& x : v) {
        x *= inv;
    }
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("cosine of vectors with different dimensions");
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    if (na == nb && a == b) {
        return 1.0;  // exact for identical inputs despite rounding
    }
    const double c = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(c, -1.0, 1.0);
}

EmbeddingVector hash_embedding(std::string_view text, std::size_t dimension, std::uint64_t seed) {
    if (dimension == 0) {
        throw std::invalid_argument("embedding dimension must be positive");
    }
    EmbeddingVector acc(dimension, 0.0);
    std::string token;
    bool any = false;
    auto flush = [&] {
        if (!token.empty()) {
            add_direction(acc, token, seed);
            token.clear();
            any = true;
        }
    };
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) {
            token.push_back(static_cast<char>(std::tolower(u)));
        } else {
            flush();
        }
    }
    flush();
    if (!any) {
        add_direction(acc, text, seed ^ 0x9e3779b97f4a7c15ULL);
    }
    normalize(acc);
    if (acc == EmbeddingVector(dimension, 0.0)) {
        acc[0] = 1.0;  // tokens cancelled exactly; vanishingly rare
    }
    return acc;
}

}  // namespace iyp::llm
