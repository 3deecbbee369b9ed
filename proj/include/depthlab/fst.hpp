#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/core.hpp"

namespace depthlab {

// Finite-state transducer over the binary alphabet. States are 0..state_count-1;
// both the transition target and the output string are total on state x bit.
struct Transducer {
    struct Edge {
        std::uint32_t to = 0;
        Bits out;
        bool operator==(const Edge& other) const = default;
    };
    std::uint32_t state_count = 0;
    std::uint32_t start = 0;
    std::vector<std::array<Edge, 2>> edges;  // edges[q][b]

    const Edge& edge(std::uint32_t q, int b) const { return edges[q][b]; }
    std::uint32_t max_out_len() const;
    bool operator==(const Transducer& other) const = default;
};

// Throws ConfigError if the table is not total or a target is out of range.
void validate(const Transducer& m);

struct RunResult {
    Bits output;
    std::uint32_t final_state = 0;
};

RunResult run(const Transducer& m, const Bits& input);

// Output length and final state without materializing the output.
std::pair<std::uint64_t, std::uint32_t> run_cost(const Transducer& m, const Bits& input);

struct IlVerdict {
    bool lossless = false;
    // Distinct inputs with equal output and equal final state, when not lossless.
    std::optional<std::pair<Bits, Bits>> witness;
};

inline constexpr std::uint64_t kIlSearchCeiling = 1 << 20;  // max k^2 * l_max

// Decides information-losslessness: is x -> (output, final state) injective?
// Pair-configuration BFS over diverged run pairs with overhang bound k^2 * l_max,
// plus a lambda-cycle scan that catches prefix-pair collisions.
IlVerdict check_il(const Transducer& m, std::uint64_t search_ceiling = kIlSearchCeiling);

// Breadth-first state renumbering from the start state, 0-edge before 1-edge;
// unreachable states are dropped. Isomorphic machines canonicalize identically.
Transducer canonicalize(const Transducer& m);

inline constexpr std::uint64_t kEnumerationCeiling = std::uint64_t{1} << 27;  // raw table count

// Number of raw tables scanned by enumerate_ilfsts(k, l_max).
std::uint64_t enumeration_raw_space(std::uint32_t k, std::uint32_t l_max);

// Every IL machine with state_count <= k and output labels of length <= l_max,
// exactly once in canonical form, in a deterministic order.
void enumerate_ilfsts(std::uint32_t k, std::uint32_t l_max,
                      const std::function<void(const Transducer&)>& yield,
                      std::uint64_t ceiling = kEnumerationCeiling);

std::vector<Transducer> enumerate_ilfsts_vec(std::uint32_t k, std::uint32_t l_max,
                                             std::uint64_t ceiling = kEnumerationCeiling);

struct BestCompression {
    PerformanceValue perf;
    Transducer machine;
};

// Best Perf = clamp(1 - cost/|x|) over the enumerated family; first machine in
// enumeration order wins ties. With include_header, cost also pays the bit length
// of the machine's canonical serialization.
BestCompression best_compression(const Bits& x, std::uint32_t k, std::uint32_t l_max,
                                 bool include_header = false,
                                 const std::vector<Transducer>* family = nullptr);

// Text format: "states k" / "start q0" / 2k lines "edge q b q' out" ('-' = lambda).
Transducer parse_fst(const std::string& text);
std::string serialize_fst(const Transducer& m);

}  // namespace depthlab
