#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/core.hpp"

namespace depthlab {

// One-to-one codecs on bit strings. decode(encode(x)) = x for every codec.
enum class CodecKind { Identity, Rle, Lz78 };

struct CodecSpec {
    CodecKind kind = CodecKind::Identity;
    unsigned rle_width = 8;  // run-length field width in bits

    std::string name() const;
    static CodecSpec parse(const std::string& text);  // "identity" | "rle[:w]" | "lz78"
};

Bits encode(const CodecSpec& codec, const Bits& x);
Bits decode(const CodecSpec& codec, const Bits& codeword);  // DomainError on malformed input

// Number of dictionary phrases lz78 parses x into (final partial phrase included).
std::uint64_t lz78_phrase_count(const Bits& x);

// Ordered codec list; index order is the "time budget" rank.
struct RegistrySpec {
    std::vector<CodecSpec> entries;

    std::string to_string() const;
    static RegistrySpec parse(const std::string& text);  // comma-separated codec names
};

// Shortest selector+payload over entries 1..t; selector is a fixed ceil(log2 t)-bit
// index (empty when t = 1); ties go to the lowest entry index.
Bits registry_encode(const RegistrySpec& reg, const Bits& x, std::size_t budget);
Bits registry_decode(const RegistrySpec& reg, const Bits& codeword, std::size_t budget);

PerformanceValue compressor_perf(std::uint64_t length_in, std::uint64_t length_code);

// Extra bits a budget-t observer pays over the full registry: |enc(x,t)| - |enc(x,T)|.
std::int64_t bennett_gap(const RegistrySpec& reg, const Bits& x, std::size_t budget);

}  // namespace depthlab
