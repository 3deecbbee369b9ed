#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace depthlab {

// Performance of an observer on a string: 1 is optimal, 0 is worst.
// Producers clamp into [0,1] before constructing.
struct PerformanceValue {
    double value = 0.0;
};

PerformanceValue clamp_perf(double raw);

// The closed family of gap bounds m(n). Evaluation clamps into [1, n].
enum class BoundKind { Constant, Log, LogLog, Linear };

struct BoundSpec {
    BoundKind kind = BoundKind::Constant;
    std::uint64_t c = 0;     // additive constant for Constant/Log/LogLog
    double alpha = 0.0;      // slope for Linear, in (0,1]

    static BoundSpec constant(std::uint64_t c) { return {BoundKind::Constant, c, 0.0}; }
    static BoundSpec log2_scaled(std::uint64_t c) { return {BoundKind::Log, c, 0.0}; }
    static BoundSpec loglog(std::uint64_t c) { return {BoundKind::LogLog, c, 0.0}; }
    static BoundSpec linear(double alpha) { return {BoundKind::Linear, 0, alpha}; }

    std::string to_string() const;
    static BoundSpec parse(const std::string& text);  // "constant:c" | "log:c" | "loglog:c" | "linear:a"
};

// Identifies one observer inside a run.
struct ObserverId {
    std::string family;
    std::uint64_t level = 0;
    std::vector<std::pair<std::string, std::string>> parameters;
};

// One row of a depth profile: performances of the competing sides at prefix length n.
struct GapRecord {
    std::uint64_t n = 0;
    PerformanceValue perf_weak;
    PerformanceValue perf_strong;
    double gap = 0.0;        // perf_strong - perf_weak, in [-1, 1]
    double threshold = 0.0;  // m(n) / n
    bool cleared = false;    // gap >= threshold
};

// m(n) for the given bound, clamped into [1, n].
std::uint64_t bound_value(const BoundSpec& spec, std::uint64_t n);

// gap >= m(n)/n
bool depth_condition(double gap, std::uint64_t n, const BoundSpec& spec);

GapRecord make_gap_record(std::uint64_t n, PerformanceValue weak, PerformanceValue strong,
                          const BoundSpec& spec);

}  // namespace depthlab
