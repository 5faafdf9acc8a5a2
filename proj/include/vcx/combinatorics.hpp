#pragma once

#include <bit>
#include <cstdint>

namespace vcx {

/// Binomial coefficient; zero when k < 0 or k > n. Exact for every value used
/// at desk scale (n <= 63).
constexpr std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

constexpr std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

constexpr std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Next word with the same popcount (Gosper's hack). Enumerates k-subsets in
/// increasing integer order, which is colex order on sets.
constexpr std::uint64_t next_same_popcount(std::uint64_t v) {
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

/// Gathers the bits of `word` selected by `mask` into the low bits (software pext).
constexpr std::uint64_t compress_bits(std::uint64_t word, std::uint64_t mask) {
    std::uint64_t out = 0;
    int pos = 0;
    while (mask != 0) {
        const std::uint64_t low = mask & -mask;
        if (word & low) out |= std::uint64_t{1} << pos;
        ++pos;
        mask ^= low;
    }
    return out;
}

/// Inverse of compress_bits: scatters the low bits of `packed` onto `mask`.
constexpr std::uint64_t expand_bits(std::uint64_t packed, std::uint64_t mask) {
    std::uint64_t out = 0;
    int pos = 0;
    while (mask != 0) {
        const std::uint64_t low = mask & -mask;
        if (packed & (std::uint64_t{1} << pos)) out |= low;
        ++pos;
        mask ^= low;
    }
    return out;
}

}  // namespace vcx
