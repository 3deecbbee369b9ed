#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/codecs.hpp"
#include "depthlab/core.hpp"
#include "depthlab/fst.hpp"
#include "depthlab/sequences.hpp"

namespace depthlab {

enum class HierarchyFamily { Fst, Predictor, Registry };

// Which observers the strong side draws from: the same family at strictly
// larger levels, or the fixed top level.
enum class StrongSide { SameFamily, FullFamily };

struct HierarchySpec {
    HierarchyFamily family = HierarchyFamily::Fst;
    StrongSide strong_side = StrongSide::SameFamily;
    std::uint32_t max_level = 1;    // fst: state budget K; predictor: max markov order; registry: T
    std::uint32_t fst_l_max = 1;    // fst only
    bool fst_header = false;        // fst only: charge the serialized table
    RegistrySpec registry;          // registry only

    std::vector<std::uint32_t> levels() const;  // fst/registry: 1..K; predictor: 0..K
    std::string family_name() const;
};

// Best performance of the family restricted to the given resource level.
PerformanceValue level_perf(const Bits& x, const HierarchySpec& hierarchy, std::uint32_t level);

struct LevelSummary {
    std::uint32_t level = 0;
    std::uint64_t cleared_count = 0;
    std::uint64_t max_cleared_n = 0;
    bool depth_indicated = false;  // >= 3 scheduled n cleared
};

struct ProfileRow {
    std::uint32_t weak_level = 0;
    GapRecord record;
    // raw log2 martingale capital, predictor family only
    std::optional<double> raw_weak, raw_strong;
};

struct DepthProfile {
    std::string source_label;
    HierarchySpec hierarchy;
    BoundSpec bound;
    std::vector<ProfileRow> rows;  // n major, weak level minor
    std::vector<LevelSummary> summary;
};

inline constexpr int kDepthIndicationCount = 3;

// The sequence prefixes profiled, from either a generator spec or raw bits.
struct PrefixSource {
    std::optional<SequenceSpec> spec;
    Bits raw;
    std::string label;

    Bits prefix(std::uint64_t n) const;
    static PrefixSource from_spec(const SequenceSpec& s);
    static PrefixSource from_raw(Bits bits, std::string label);
};

// fst_family optionally injects a precomputed enumeration for the fst family
// (e.g. from the on-disk cache); when null it is enumerated on the fly.
DepthProfile depth_profile(const PrefixSource& source, const HierarchySpec& hierarchy,
                           const BoundSpec& bound, const std::vector<std::uint64_t>& schedule,
                           const std::vector<Transducer>* fst_family = nullptr);

// Profiles the source and its image under an IL transducer, aligned on the
// schedule; rejects machines that are not information lossless.
std::pair<DepthProfile, DepthProfile> slow_growth_experiment(
    const PrefixSource& source, const Transducer& machine, const HierarchySpec& hierarchy,
    const BoundSpec& bound, const std::vector<std::uint64_t>& schedule,
    const std::vector<Transducer>* fst_family = nullptr);

struct BennettRow {
    std::uint64_t n = 0;
    std::uint32_t budget = 0;
    std::uint64_t code_bits = 0;
    std::uint64_t code_bits_full = 0;
    std::int64_t gap_bits = 0;
};

std::vector<BennettRow> bennett_toy_profile(const PrefixSource& source, const RegistrySpec& reg,
                                            const std::vector<std::uint64_t>& schedule);

}  // namespace depthlab
