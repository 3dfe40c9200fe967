// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "iyp/llm/types.hpp"

namespace iyp::llm {

/// Deterministic bag-of-tokens embedding: every lowercase alphanumeric token
/// maps to a pseudo-random direction seeded by (seed, token); the text
/// vector is their normalized sum. Texts sharing tokens get positive cosine.
/// Text without alphanumerics is hashed whole. Always unit norm.
[[nodiscard]] EmbeddingVector hash_embedding(std::string_view text, std::size_t dimension,
                                             std::uint64_t seed);

/// Scales to unit norm. The zero vector and vectors already at unit norm
/// (within 1e-12 squared) are returned unchanged.
void normalize(EmbeddingVector& v) noexcept;

/// Cosine similarity; 0 when either side is the zero vector. Throws
/// std::invalid_argument on a dimension mismatch.
[[nodiscard]] double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace iyp::llm
