#include "depthlab/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depthlab/errors.hpp"
#include "depthlab/predictors.hpp"

namespace depthlab {

std::vector<std::uint32_t> HierarchySpec::levels() const {
    std::vector<std::uint32_t> out;
    std::uint32_t lo = family == HierarchyFamily::Predictor ? 0 : 1;
    for (std::uint32_t l = lo; l <= max_level; ++l) out.push_back(l);
    return out;
}

std::string HierarchySpec::family_name() const {
    switch (family) {
        case HierarchyFamily::Fst: return "fst";
        case HierarchyFamily::Predictor: return "predictor";
        case HierarchyFamily::Registry: return "registry";
    }
    return "";
}

Bits PrefixSource::prefix(std::uint64_t n) const {
    if (spec) return generate(*spec, n);
    if (raw.size() < n) throw ConfigError("input shorter than requested prefix length");
    return raw.substr(0, n);
}

PrefixSource PrefixSource::from_spec(const SequenceSpec& s) {
    return {s, "", s.to_string()};
}

PrefixSource PrefixSource::from_raw(Bits bits, std::string label) {
    if (!is_bits(bits)) throw ConfigError("raw input is not a bit string");
    return {std::nullopt, std::move(bits), std::move(label)};
}

namespace {

void validate_hierarchy(const HierarchySpec& h) {
    if (h.max_level < 1 && h.family != HierarchyFamily::Predictor)
        throw ConfigError("hierarchy needs at least one level");
    if (h.family == HierarchyFamily::Fst && h.fst_l_max < 1)
        throw ConfigError("fst hierarchy needs l_max >= 1");
    if (h.family == HierarchyFamily::Registry && h.max_level > h.registry.entries.size())
        throw ConfigError("registry hierarchy level exceeds registry size");
}

struct LevelEval {
    double perf_raw = 0.0;  // before clamping; the gap uses clamped values
    std::optional<double> raw_log;
};

// Best performance per level in one pass over x. For the fst family the caller
// supplies the enumerated (K, l_max) family so it is shared across prefixes.
std::vector<LevelEval> eval_levels(const Bits& x, const HierarchySpec& h,
                                   const std::vector<Transducer>* fst_family) {
    if (x.empty()) throw ConfigError("cannot profile an empty prefix");
    std::vector<std::uint32_t> levels = h.levels();
    std::vector<LevelEval> out(levels.size());
    const double n = static_cast<double>(x.size());
    switch (h.family) {
        case HierarchyFamily::Fst: {
            // bucket best raw perf by state count, then prefix-max over budgets
            std::vector<double> best(h.max_level + 1, -std::numeric_limits<double>::infinity());
            for (const Transducer& m : *fst_family) {
                auto [cost, fin] = run_cost(m, x);
                (void)fin;
                if (h.fst_header) cost += 8 * serialize_fst(m).size();
                double perf = 1.0 - static_cast<double>(cost) / n;
                best[m.state_count] = std::max(best[m.state_count], perf);
            }
            double acc = -std::numeric_limits<double>::infinity();
            for (std::uint32_t l = 1; l <= h.max_level; ++l) {
                acc = std::max(acc, best[l]);
                out[l - 1].perf_raw = acc;
            }
            break;
        }
        case HierarchyFamily::Predictor: {
            // candidates at order r: uniform plus markov orders 0..r; the max of
            // martingale_log determines the max perf since clamp is monotone
            double acc = 0.0;  // uniform capital is identically 1
            for (std::uint32_t r = 0; r <= h.max_level; ++r) {
                PredictorSpec p{PredictorKind::Markov, r, ""};
                acc = std::max(acc, martingale_log(p, x));
                out[r].raw_log = acc;
                out[r].perf_raw = acc / n;
            }
            break;
        }
        case HierarchyFamily::Registry: {
            for (std::size_t i = 0; i < levels.size(); ++i) {
                std::uint64_t bits = registry_encode(h.registry, x, levels[i]).size();
                out[i].perf_raw = 1.0 - static_cast<double>(bits) / n;
            }
            break;
        }
    }
    return out;
}

void append_profile_rows(DepthProfile& profile, const Bits& x, const HierarchySpec& h,
                         const BoundSpec& bound, const std::vector<Transducer>* fst_family) {
    std::vector<std::uint32_t> levels = h.levels();
    std::vector<LevelEval> evals = eval_levels(x, h, fst_family);
    // suffix max over strictly larger levels for the same-family strong side
    std::vector<double> stronger(levels.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = levels.size() - 1; i-- > 0;)
        stronger[i] = std::max(evals[i + 1].perf_raw, stronger[i + 1]);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        double strong_raw;
        std::optional<double> raw_strong;
        if (h.strong_side == StrongSide::FullFamily) {
            strong_raw = evals.back().perf_raw;
            raw_strong = evals.back().raw_log;
        } else if (i + 1 < levels.size()) {
            strong_raw = stronger[i];
            // predictor raw values are cumulative maxima, so the suffix max
            // over larger orders is attained at the top order
            raw_strong = evals.back().raw_log;
        } else {
            strong_raw = evals[i].perf_raw;  // no stronger observer: gap 0
            raw_strong = evals[i].raw_log;
        }
        ProfileRow row;
        row.weak_level = levels[i];
        row.record = make_gap_record(x.size(), clamp_perf(evals[i].perf_raw),
                                     clamp_perf(strong_raw), bound);
        row.raw_weak = evals[i].raw_log;
        row.raw_strong = raw_strong;
        profile.rows.push_back(std::move(row));
    }
}

void summarize(DepthProfile& profile) {
    std::vector<std::uint32_t> levels = profile.hierarchy.levels();
    profile.summary.clear();
    for (std::uint32_t l : levels) {
        LevelSummary s;
        s.level = l;
        for (const ProfileRow& row : profile.rows)
            if (row.weak_level == l && row.record.cleared) {
                ++s.cleared_count;
                s.max_cleared_n = std::max(s.max_cleared_n, row.record.n);
            }
        s.depth_indicated = s.cleared_count >= kDepthIndicationCount;
        profile.summary.push_back(s);
    }
}

void validate_schedule(const std::vector<std::uint64_t>& schedule) {
    if (schedule.empty()) throw ConfigError("schedule is empty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 1) throw ConfigError("schedule entries must be >= 1");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw ConfigError("schedule must be strictly ascending");
    }
}

std::optional<std::vector<Transducer>> maybe_enumerate(const HierarchySpec& h) {
    if (h.family != HierarchyFamily::Fst) return std::nullopt;
    return enumerate_ilfsts_vec(h.max_level, h.fst_l_max);
}

}  // namespace

PerformanceValue level_perf(const Bits& x, const HierarchySpec& hierarchy, std::uint32_t level) {
    validate_hierarchy(hierarchy);
    std::vector<std::uint32_t> levels = hierarchy.levels();
    auto it = std::find(levels.begin(), levels.end(), level);
    if (it == levels.end()) throw ConfigError("level not in hierarchy");
    switch (hierarchy.family) {
        case HierarchyFamily::Fst:
            return best_compression(x, level, hierarchy.fst_l_max, hierarchy.fst_header).perf;
        case HierarchyFamily::Predictor:
        case HierarchyFamily::Registry: {
            HierarchySpec sub = hierarchy;
            sub.max_level = level;
            return clamp_perf(eval_levels(x, sub, nullptr).back().perf_raw);
        }
    }
    throw ConfigError("level_perf: bad family");
}

DepthProfile depth_profile(const PrefixSource& source, const HierarchySpec& hierarchy,
                           const BoundSpec& bound, const std::vector<std::uint64_t>& schedule,
                           const std::vector<Transducer>* fst_family) {
    validate_hierarchy(hierarchy);
    validate_schedule(schedule);
    DepthProfile profile{source.label, hierarchy, bound, {}, {}};
    auto family = fst_family ? std::nullopt : maybe_enumerate(hierarchy);
    const std::vector<Transducer>* fam = fst_family ? fst_family : (family ? &*family : nullptr);
    for (std::uint64_t n : schedule)
        append_profile_rows(profile, source.prefix(n), hierarchy, bound, fam);
    summarize(profile);
    return profile;
}

std::pair<DepthProfile, DepthProfile> slow_growth_experiment(
    const PrefixSource& source, const Transducer& machine, const HierarchySpec& hierarchy,
    const BoundSpec& bound, const std::vector<std::uint64_t>& schedule,
    const std::vector<Transducer>* fst_family) {
    validate_hierarchy(hierarchy);
    validate_schedule(schedule);
    IlVerdict verdict = check_il(machine);
    if (!verdict.lossless) throw DomainError("slow-growth machine is not information lossless");
    DepthProfile src_profile{source.label, hierarchy, bound, {}, {}};
    DepthProfile dst_profile{source.label + " via transducer", hierarchy, bound, {}, {}};
    auto family = fst_family ? std::nullopt : maybe_enumerate(hierarchy);
    const std::vector<Transducer>* fam = fst_family ? fst_family : (family ? &*family : nullptr);
    for (std::uint64_t n : schedule) {
        Bits x = source.prefix(n);
        Bits y = run(machine, x).output;
        if (y.empty()) throw DomainError("transducer output is empty at n=" + std::to_string(n));
        append_profile_rows(src_profile, x, hierarchy, bound, fam);
        append_profile_rows(dst_profile, y, hierarchy, bound, fam);
    }
    summarize(src_profile);
    summarize(dst_profile);
    return {std::move(src_profile), std::move(dst_profile)};
}

std::vector<BennettRow> bennett_toy_profile(const PrefixSource& source, const RegistrySpec& reg,
                                            const std::vector<std::uint64_t>& schedule) {
    validate_schedule(schedule);
    if (reg.entries.empty()) throw ConfigError("empty registry");
    std::vector<BennettRow> rows;
    for (std::uint64_t n : schedule) {
        Bits x = source.prefix(n);
        std::uint64_t full = registry_encode(reg, x, reg.entries.size()).size();
        for (std::size_t t = 1; t <= reg.entries.size(); ++t) {
            std::uint64_t at_t = registry_encode(reg, x, t).size();
            rows.push_back({n, static_cast<std::uint32_t>(t), at_t, full,
                            static_cast<std::int64_t>(at_t) - static_cast<std::int64_t>(full)});
        }
    }
    return rows;
}

}  // namespace depthlab
