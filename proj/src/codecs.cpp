#include "depthlab/codecs.hpp"

#include <algorithm>
#include <unordered_map>

#include "depthlab/errors.hpp"

namespace depthlab {

namespace {

Bits rle_encode(const Bits& x, unsigned w) {
    const std::uint64_t max_run = (std::uint64_t{1} << w) - 1;
    Bits out;
    std::size_t i = 0;
    while (i < x.size()) {
        char bit = x[i];
        std::size_t j = i;
        while (j < x.size() && x[j] == bit) ++j;
        std::uint64_t run = j - i;
        while (run > 0) {
            std::uint64_t chunk = std::min(run, max_run);
            out.push_back(bit);
            out += to_bits(chunk, w);
            run -= chunk;
        }
        i = j;
    }
    return out;
}

Bits rle_decode(const Bits& cw, unsigned w) {
    Bits out;
    std::size_t i = 0;
    while (i < cw.size()) {
        if (cw.size() - i < 1 + w) throw DomainError("rle: truncated record");
        char bit = cw[i];
        std::uint64_t run = from_bits(cw, i + 1, w);
        if (run == 0) throw DomainError("rle: zero run length");
        out.append(run, bit);
        i += 1 + w;
    }
    return out;
}

// lz78 phrase parse: phrase i extends the longest previously-seen phrase by one
// bit. Dictionary index 0 is lambda. Returns (complete phrases as (index, bit),
// index of the final partial phrase or npos when the input ends on a boundary).
struct Lz78Parse {
    std::vector<std::pair<std::uint64_t, char>> phrases;
    std::uint64_t partial = npos;
    static constexpr std::uint64_t npos = ~std::uint64_t{0};
};

Lz78Parse lz78_parse(const Bits& x) {
    Lz78Parse p;
    std::unordered_map<std::string, std::uint64_t> dict;  // phrase -> index, lambda = 0
    std::string cur;
    std::uint64_t cur_idx = 0;
    for (char c : x) {
        cur.push_back(c);
        auto it = dict.find(cur);
        if (it == dict.end()) {
            std::uint64_t idx = dict.size() + 1;
            dict.emplace(cur, idx);
            p.phrases.emplace_back(cur_idx, c);
            cur.clear();
            cur_idx = 0;
        } else {
            cur_idx = it->second;
        }
    }
    if (!cur.empty()) p.partial = cur_idx;
    return p;
}

// Stream layout: 1 header bit (1 = every record is index+literal, 0 = the final
// record is index-only), then record i with a ceil(log2 i)-bit index field.
Bits lz78_encode(const Bits& x) {
    Lz78Parse p = lz78_parse(x);
    Bits out(1, p.partial == Lz78Parse::npos ? '1' : '0');
    std::uint64_t i = 1;
    for (const auto& [idx, bit] : p.phrases) {
        out += to_bits(idx, ceil_log2(i));
        out.push_back(bit);
        ++i;
    }
    if (p.partial != Lz78Parse::npos) out += to_bits(p.partial, ceil_log2(i));
    return out;
}

Bits lz78_decode(const Bits& cw) {
    if (cw.empty()) throw DomainError("lz78: empty codeword");
    bool all_complete = cw[0] == '1';
    std::vector<Bits> dict{""};
    Bits out;
    std::size_t pos = 1;
    std::uint64_t i = 1;
    while (pos < cw.size() || !all_complete) {
        unsigned w = ceil_log2(i);
        std::size_t remaining = cw.size() - pos;
        if (!all_complete && remaining == w) {
            std::uint64_t idx = from_bits(cw, pos, w);
            if (idx >= dict.size()) throw DomainError("lz78: index out of range");
            if (idx == 0) throw DomainError("lz78: empty final phrase");
            out += dict[idx];
            return out;
        }
        if (remaining < w + 1) throw DomainError("lz78: truncated record");
        std::uint64_t idx = from_bits(cw, pos, w);
        if (idx >= dict.size()) throw DomainError("lz78: index out of range");
        Bits phrase = dict[idx];
        phrase.push_back(cw[pos + w]);
        out += phrase;
        dict.push_back(std::move(phrase));
        pos += w + 1;
        ++i;
    }
    return out;
}

}  // namespace

std::uint64_t lz78_phrase_count(const Bits& x) {
    Lz78Parse p = lz78_parse(x);
    return p.phrases.size() + (p.partial != Lz78Parse::npos ? 1 : 0);
}

Bits encode(const CodecSpec& codec, const Bits& x) {
    switch (codec.kind) {
        case CodecKind::Identity: return x;
        case CodecKind::Rle: return rle_encode(x, codec.rle_width);
        case CodecKind::Lz78: return lz78_encode(x);
    }
    throw ConfigError("encode: bad codec");
}

Bits decode(const CodecSpec& codec, const Bits& codeword) {
    switch (codec.kind) {
        case CodecKind::Identity: return codeword;
        case CodecKind::Rle: return rle_decode(codeword, codec.rle_width);
        case CodecKind::Lz78: return lz78_decode(codeword);
    }
    throw ConfigError("decode: bad codec");
}

std::string CodecSpec::name() const {
    switch (kind) {
        case CodecKind::Identity: return "identity";
        case CodecKind::Rle: return rle_width == 8 ? "rle" : "rle:" + std::to_string(rle_width);
        case CodecKind::Lz78: return "lz78";
    }
    return "";
}

CodecSpec CodecSpec::parse(const std::string& text) {
    if (text == "identity") return {CodecKind::Identity};
    if (text == "lz78") return {CodecKind::Lz78};
    if (text == "rle") return {CodecKind::Rle, 8};
    if (text.rfind("rle:", 0) == 0) {
        try {
            unsigned long w = std::stoul(text.substr(4));
            if (w < 1 || w > 32) throw ConfigError("rle width must be in 1..32");
            return {CodecKind::Rle, static_cast<unsigned>(w)};
        } catch (const std::invalid_argument&) {
        } catch (const std::out_of_range&) {
        }
        throw ConfigError("bad rle width in '" + text + "'");
    }
    throw ConfigError("unknown codec '" + text + "'");
}

std::string RegistrySpec::to_string() const {
    std::string out;
    for (const auto& c : entries) {
        if (!out.empty()) out += ',';
        out += c.name();
    }
    return out;
}

RegistrySpec RegistrySpec::parse(const std::string& text) {
    RegistrySpec reg;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        reg.entries.push_back(CodecSpec::parse(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    for (std::size_t i = 0; i < reg.entries.size(); ++i)
        for (std::size_t j = i + 1; j < reg.entries.size(); ++j)
            if (reg.entries[i].name() == reg.entries[j].name())
                throw ConfigError("duplicate registry entry '" + reg.entries[i].name() + "'");
    return reg;
}

Bits registry_encode(const RegistrySpec& reg, const Bits& x, std::size_t budget) {
    if (budget < 1 || budget > reg.entries.size())
        throw ConfigError("registry_encode: budget out of range");
    unsigned sel = ceil_log2(budget);
    std::size_t best = 0;
    Bits best_payload = encode(reg.entries[0], x);
    for (std::size_t i = 1; i < budget; ++i) {
        Bits payload = encode(reg.entries[i], x);
        if (payload.size() < best_payload.size()) {
            best = i;
            best_payload = std::move(payload);
        }
    }
    return to_bits(best, sel) + best_payload;
}

Bits registry_decode(const RegistrySpec& reg, const Bits& codeword, std::size_t budget) {
    if (budget < 1 || budget > reg.entries.size())
        throw ConfigError("registry_decode: budget out of range");
    unsigned sel = ceil_log2(budget);
    if (codeword.size() < sel) throw DomainError("registry: truncated selector");
    std::uint64_t idx = from_bits(codeword, 0, sel);
    if (idx >= budget) throw DomainError("registry: selector out of range");
    return decode(reg.entries[idx], codeword.substr(sel));
}

PerformanceValue compressor_perf(std::uint64_t length_in, std::uint64_t length_code) {
    if (length_in < 1) throw ConfigError("compressor_perf: empty input");
    return clamp_perf(1.0 - static_cast<double>(length_code) / static_cast<double>(length_in));
}

std::int64_t bennett_gap(const RegistrySpec& reg, const Bits& x, std::size_t budget) {
    std::int64_t at_budget = static_cast<std::int64_t>(registry_encode(reg, x, budget).size());
    std::int64_t at_full = static_cast<std::int64_t>(registry_encode(reg, x, reg.entries.size()).size());
    return at_budget - at_full;
}

}  // namespace depthlab
