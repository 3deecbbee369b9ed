#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "depthlab/fst.hpp"

namespace depthlab {

// Directory for cached enumeration results: DEPTHLAB_CACHE_DIR when set,
// otherwise ./.depthlab-cache.
std::filesystem::path cache_dir();

// Verified machine list for (k, l_max), or nullopt on miss. A corrupt or
// tampered entry is a miss.
std::optional<std::vector<Transducer>> cache_lookup(std::uint32_t k, std::uint32_t l_max,
                                                    const std::filesystem::path& dir);

// Atomic write (temp file + rename); concurrent readers never see a partial entry.
void cache_store(std::uint32_t k, std::uint32_t l_max, const std::vector<Transducer>& machines,
                 const std::filesystem::path& dir);

// cache_lookup, falling back to enumerate_ilfsts + cache_store on miss.
std::vector<Transducer> cached_enumeration(std::uint32_t k, std::uint32_t l_max,
                                           const std::filesystem::path& dir);

}  // namespace depthlab
