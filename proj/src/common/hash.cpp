// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/common/hash.hpp"

#include <array>

namespace iyp {

namespace {
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
}

Fnv1a64& Fnv1a64::update(std::string_view bytes) noexcept {
    for (unsigned char c : bytes) {
        state_ ^= c;
        state_ *= kFnvPrime;
    }
    return *this;
}

Fnv1a64& Fnv1a64::update_u64(std::uint64_t value) noexcept {
    for (int i = 0; i < 8; ++i) {
        state_ ^= (value >> (8 * i)) & 0xffU;
        state_ *= kFnvPrime;
    }
    return *this;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    return Fnv1a64{}.update(bytes).digest();
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string to_hex(std::uint64_t value) {
    static constexpr std::array<char, 16> kDigits = {'0', '1', '2', '3', '4', '5', '6', '7',
                                                     '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kDigits[value & 0xfU];
        value >>= 4;
    }
    return out;
}

}  // namespace iyp
