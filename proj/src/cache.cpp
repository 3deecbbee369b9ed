#include "depthlab/cache.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "depthlab/errors.hpp"

namespace depthlab {

namespace {

constexpr const char* kFormatVersion = "v1";

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::filesystem::path entry_path(std::uint32_t k, std::uint32_t l_max,
                                 const std::filesystem::path& dir) {
    return dir / ("ilfst-k" + std::to_string(k) + "-l" + std::to_string(l_max) + "-" +
                  kFormatVersion + ".cache");
}

// Payload: each machine's text serialization terminated by a blank line.
std::string render_payload(const std::vector<Transducer>& machines) {
    std::string out;
    for (const Transducer& m : machines) out += serialize_fst(m) + "\n";
    return out;
}

std::optional<std::vector<Transducer>> parse_payload(const std::string& payload) {
    std::vector<Transducer> machines;
    std::string block;
    std::istringstream in(payload);
    std::string line;
    auto flush = [&]() -> bool {
        if (block.empty()) return true;
        try {
            machines.push_back(parse_fst(block));
        } catch (const ParseError&) {
            return false;
        }
        block.clear();
        return true;
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            if (!flush()) return std::nullopt;
        } else {
            block += line + "\n";
        }
    }
    if (!flush()) return std::nullopt;
    return machines;
}

}  // namespace

std::filesystem::path cache_dir() {
    if (const char* env = std::getenv("DEPTHLAB_CACHE_DIR"); env && *env)
        return std::filesystem::path(env);
    return std::filesystem::path(".depthlab-cache");
}

std::optional<std::vector<Transducer>> cache_lookup(std::uint32_t k, std::uint32_t l_max,
                                                    const std::filesystem::path& dir) {
    std::ifstream in(entry_path(k, l_max, dir), std::ios::binary);
    if (!in) return std::nullopt;
    std::string first;
    if (!std::getline(in, first)) return std::nullopt;
    std::uint64_t checksum = 0;
    if (first.rfind("checksum ", 0) != 0) return std::nullopt;
    try {
        checksum = std::stoull(first.substr(9));
    } catch (...) {
        return std::nullopt;
    }
    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (fnv1a(payload) != checksum) return std::nullopt;
    return parse_payload(payload);
}

void cache_store(std::uint32_t k, std::uint32_t l_max, const std::vector<Transducer>& machines,
                 const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string payload = render_payload(machines);
    std::filesystem::path target = entry_path(k, l_max, dir);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write cache entry " + tmp.string());
        out << "checksum " << fnv1a(payload) << "\n" << payload;
        if (!out) throw DomainError("cache write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw DomainError("cache rename failed: " + ec.message());
    }
}

std::vector<Transducer> cached_enumeration(std::uint32_t k, std::uint32_t l_max,
                                           const std::filesystem::path& dir) {
    if (auto hit = cache_lookup(k, l_max, dir)) return std::move(*hit);
    std::vector<Transducer> machines = enumerate_ilfsts_vec(k, l_max);
    cache_store(k, l_max, machines, dir);
    return machines;
}

}  // namespace depthlab
