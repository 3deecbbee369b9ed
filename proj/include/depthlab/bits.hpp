#pragma once

#include <cstdint>
#include <string>

namespace depthlab {

// Binary strings are std::string over {'0','1'}; the empty string is lambda.
using Bits = std::string;

inline bool is_bits(const Bits& s) {
    for (char c : s)
        if (c != '0' && c != '1') return false;
    return true;
}

// Smallest j >= 0 with n <= 2^j (so ceil(log2 n) for n >= 1).
inline unsigned ceil_log2(std::uint64_t n) {
    unsigned j = 0;
    while ((n >> j) > 1 || (std::uint64_t{1} << j) < n) ++j;
    return j;
}

// Fixed-width big-endian binary of v.
inline Bits to_bits(std::uint64_t v, unsigned width) {
    Bits out(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if (v >> (width - 1 - i) & 1) out[i] = '1';
    return out;
}

inline std::uint64_t from_bits(const Bits& s, std::size_t pos, unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | std::uint64_t(s[pos + i] == '1');
    return v;
}

}  // namespace depthlab
