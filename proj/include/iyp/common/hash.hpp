// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace iyp {

/// Incremental 64-bit FNV-1a. Used for content hashes and cache keys, never
/// for anything security relevant.
class Fnv1a64 {
public:
    Fnv1a64& update(std::string_view bytes) noexcept;
    Fnv1a64& update_u64(std::uint64_t value) noexcept;
    [[nodiscard]] std::uint64_t digest() const noexcept { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// SplitMix64 step; good enough to expand a seed into a stream of bits.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t& state) noexcept;

[[nodiscard]] std::string to_hex(std::uint64_t value);

}  // namespace iyp
