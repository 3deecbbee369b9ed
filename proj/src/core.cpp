#include "depthlab/core.hpp"

#include <algorithm>
#include <cmath>

#include "depthlab/bits.hpp"
#include "depthlab/errors.hpp"

namespace depthlab {

PerformanceValue clamp_perf(double raw) {
    if (!(raw > 0.0)) return {0.0};  // also maps NaN / -inf to worst
    return {std::min(raw, 1.0)};
}

std::uint64_t bound_value(const BoundSpec& spec, std::uint64_t n) {
    if (n < 1) throw ConfigError("bound_value: n must be >= 1");
    std::uint64_t raw = 0;
    switch (spec.kind) {
        case BoundKind::Constant:
            raw = spec.c;
            break;
        case BoundKind::Log:
            raw = ceil_log2(n) + spec.c;
            break;
        case BoundKind::LogLog: {
            // smallest j with n <= 2^(2^j), i.e. ceil(log2 log2 n), exact in integers
            std::uint64_t j = 0;
            while (j < 6 && (std::uint64_t{1} << (std::uint64_t{1} << j)) < n) ++j;
            raw = j + spec.c;
            break;
        }
        case BoundKind::Linear:
            // tolerate fp noise in decimal alphas: ceil(0.1*100) must be 10
            raw = static_cast<std::uint64_t>(std::ceil(spec.alpha * static_cast<double>(n) - 1e-9));
            break;
    }
    return std::clamp<std::uint64_t>(raw, 1, n);
}

bool depth_condition(double gap, std::uint64_t n, const BoundSpec& spec) {
    return gap >= static_cast<double>(bound_value(spec, n)) / static_cast<double>(n);
}

GapRecord make_gap_record(std::uint64_t n, PerformanceValue weak, PerformanceValue strong,
                          const BoundSpec& spec) {
    GapRecord r;
    r.n = n;
    r.perf_weak = weak;
    r.perf_strong = strong;
    r.gap = strong.value - weak.value;
    r.threshold = static_cast<double>(bound_value(spec, n)) / static_cast<double>(n);
    r.cleared = depth_condition(r.gap, n, spec);
    return r;
}

std::string BoundSpec::to_string() const {
    switch (kind) {
        case BoundKind::Constant: return "constant:" + std::to_string(c);
        case BoundKind::Log: return "log:" + std::to_string(c);
        case BoundKind::LogLog: return "loglog:" + std::to_string(c);
        case BoundKind::Linear: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "linear:%.9g", alpha);
            return buf;
        }
    }
    return "";
}

BoundSpec BoundSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("bound spec needs kind:param, got '" + text + "'");
    std::string kind = text.substr(0, colon);
    std::string param = text.substr(colon + 1);
    try {
        if (kind == "constant") return constant(std::stoull(param));
        if (kind == "log") return log2_scaled(std::stoull(param));
        if (kind == "loglog") return loglog(std::stoull(param));
        if (kind == "linear") {
            double a = std::stod(param);
            if (!(a > 0.0 && a <= 1.0)) throw ConfigError("linear bound alpha must be in (0,1]");
            return linear(a);
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad bound parameter '" + param + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("bad bound parameter '" + param + "'");
    }
    throw ConfigError("unknown bound kind '" + kind + "'");
}

}  // namespace depthlab
