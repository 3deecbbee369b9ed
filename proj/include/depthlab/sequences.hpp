#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depthlab/bits.hpp"

namespace depthlab {

// s_n in the standard enumeration 0, 1, 00, 01, 10, 11, 000, ...
// (lambda precedes s_0 in the listing but carries no index).
Bits nth_string(std::uint64_t n);

// Rank of a nonempty string in the same enumeration; inverse of nth_string.
std::uint64_t string_rank(const Bits& s);

// Minimum under length-then-lexicographic order. Errors on an empty set.
Bits first_of(const std::vector<Bits>& set);

enum class SequenceKind { Periodic, Champernowne, Prng, CharFn, BlockDeep };

struct SequenceSpec {
    SequenceKind kind = SequenceKind::Periodic;
    Bits pattern;            // Periodic
    std::uint64_t seed = 0;  // Prng
    std::string rule;        // CharFn: "evens" | "palindromes"

    std::string to_string() const;
    // "periodic:<bits>" | "champernowne" | "prng:<seed>" | "charfn:<rule>" | "blockdeep"
    static SequenceSpec parse(const std::string& text);
};

inline constexpr std::uint64_t kGenerateCeiling = std::uint64_t{1} << 20;

// Length-n prefix of the sequence; deterministic and prefix-consistent.
Bits generate(const SequenceSpec& spec, std::uint64_t n);

}  // namespace depthlab
