#include "depthlab/sequences.hpp"

#include <algorithm>
#include <vector>

#include "depthlab/errors.hpp"

namespace depthlab {

Bits nth_string(std::uint64_t n) {
    // offset n+2 has bit-width L+1 where L = |s_n|; the low L bits are the string
    std::uint64_t offset = n + 2;
    unsigned width = 0;
    while (offset >> width) ++width;
    unsigned len = width - 1;
    return to_bits(offset - (std::uint64_t{1} << len), len);
}

std::uint64_t string_rank(const Bits& s) {
    if (s.empty()) throw DomainError("lambda has no enumeration index");
    std::uint64_t v = from_bits(s, 0, static_cast<unsigned>(s.size()));
    return (std::uint64_t{1} << s.size()) + v - 2;
}

Bits first_of(const std::vector<Bits>& set) {
    if (set.empty()) throw DomainError("first_of: empty set");
    return *std::min_element(set.begin(), set.end(), [](const Bits& a, const Bits& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

namespace {

Bits gen_periodic(const Bits& pattern, std::uint64_t n) {
    Bits out;
    out.reserve(n);
    while (out.size() < n) out.append(pattern, 0, std::min<std::size_t>(pattern.size(), n - out.size()));
    return out;
}

Bits gen_champernowne(std::uint64_t n) {
    Bits out;
    out.reserve(n);
    for (std::uint64_t i = 0; out.size() < n; ++i) {
        Bits s = nth_string(i);
        out.append(s, 0, std::min<std::size_t>(s.size(), n - out.size()));
    }
    return out;
}

Bits gen_prng(std::uint64_t seed, std::uint64_t n) {
    // xorshift64*, top bit of the scrambled output per step
    std::uint64_t x = seed;
    Bits out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        std::uint64_t o = x * 2685821657736338717ULL;
        out.push_back((o >> 63) ? '1' : '0');
    }
    return out;
}

bool rule_member(const std::string& rule, const Bits& s) {
    if (rule == "evens") return s.size() % 2 == 0;
    if (rule == "palindromes") {
        Bits r(s.rbegin(), s.rend());
        return r == s;
    }
    throw ConfigError("unknown charfn rule '" + rule + "'");
}

Bits gen_charfn(const std::string& rule, std::uint64_t n) {
    Bits out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(rule_member(rule, nth_string(i)) ? '1' : '0');
    return out;
}

Bits gen_blockdeep(std::uint64_t n) {
    // block j: (0^{2^j} 1) repeated 4^j
    Bits out;
    out.reserve(n);
    for (unsigned j = 0; out.size() < n; ++j) {
        Bits pat(std::size_t{1} << j, '0');
        pat.push_back('1');
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << (2 * j)) && out.size() < n; ++r)
            out.append(pat, 0, std::min<std::size_t>(pat.size(), n - out.size()));
    }
    return out;
}

}  // namespace

Bits generate(const SequenceSpec& spec, std::uint64_t n) {
    if (n > kGenerateCeiling) throw ConfigError("generate: length exceeds ceiling");
    switch (spec.kind) {
        case SequenceKind::Periodic: return gen_periodic(spec.pattern, n);
        case SequenceKind::Champernowne: return gen_champernowne(n);
        case SequenceKind::Prng: return gen_prng(spec.seed, n);
        case SequenceKind::CharFn: return gen_charfn(spec.rule, n);
        case SequenceKind::BlockDeep: return gen_blockdeep(n);
    }
    throw ConfigError("generate: bad kind");
}

std::string SequenceSpec::to_string() const {
    switch (kind) {
        case SequenceKind::Periodic: return "periodic:" + pattern;
        case SequenceKind::Champernowne: return "champernowne";
        case SequenceKind::Prng: return "prng:" + std::to_string(seed);
        case SequenceKind::CharFn: return "charfn:" + rule;
        case SequenceKind::BlockDeep: return "blockdeep";
    }
    return "";
}

SequenceSpec SequenceSpec::parse(const std::string& text) {
    SequenceSpec s;
    if (text == "champernowne") {
        s.kind = SequenceKind::Champernowne;
    } else if (text == "blockdeep") {
        s.kind = SequenceKind::BlockDeep;
    } else if (text.rfind("periodic:", 0) == 0) {
        s.kind = SequenceKind::Periodic;
        s.pattern = text.substr(9);
        if (s.pattern.empty() || !is_bits(s.pattern))
            throw ConfigError("periodic pattern must be a nonempty bit string");
    } else if (text.rfind("prng:", 0) == 0) {
        s.kind = SequenceKind::Prng;
        try {
            s.seed = std::stoull(text.substr(5));
        } catch (const std::exception&) {
            throw ConfigError("bad prng seed in '" + text + "'");
        }
    } else if (text.rfind("charfn:", 0) == 0) {
        s.kind = SequenceKind::CharFn;
        s.rule = text.substr(7);
        rule_member(s.rule, "0");  // validates the rule name
    } else {
        throw ConfigError("unknown sequence spec '" + text + "'");
    }
    return s;
}

}  // namespace depthlab
