#include "depthlab/report.hpp"

#include <cstdio>

namespace depthlab {

namespace {

std::string fixed9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

void echo(std::string& out, const std::string& key, const std::string& value) {
    out += "# " + key + "=" + value + "\n";
}

void echo_hierarchy(std::string& out, const HierarchySpec& h) {
    echo(out, "family", h.family_name());
    echo(out, "strong_side", strong_side_name(h.strong_side));
    echo(out, "max_level", std::to_string(h.max_level));
    if (h.family == HierarchyFamily::Fst) {
        echo(out, "l_max", std::to_string(h.fst_l_max));
        echo(out, "header", h.fst_header ? "1" : "0");
    }
    if (h.family == HierarchyFamily::Registry) echo(out, "registry", h.registry.to_string());
}

}  // namespace

std::string strong_side_name(StrongSide side) {
    return side == StrongSide::SameFamily ? "same-family" : "full-family";
}

std::string render_profile_csv(const DepthProfile& profile) {
    std::string out;
    echo(out, "source", profile.source_label);
    echo_hierarchy(out, profile.hierarchy);
    echo(out, "bound", profile.bound.to_string());
    bool raw = profile.hierarchy.family == HierarchyFamily::Predictor;
    out += "n,family,weak_level,strong_side,perf_weak,perf_strong,gap,threshold,cleared";
    if (raw) out += ",raw_weak,raw_strong";
    out += "\n";
    for (const ProfileRow& row : profile.rows) {
        const GapRecord& r = row.record;
        out += std::to_string(r.n) + ',' + profile.hierarchy.family_name() + ',' +
               std::to_string(row.weak_level) + ',' +
               strong_side_name(profile.hierarchy.strong_side) + ',' +
               fixed9(r.perf_weak.value) + ',' + fixed9(r.perf_strong.value) + ',' +
               fixed9(r.gap) + ',' + fixed9(r.threshold) + ',' + (r.cleared ? "1" : "0");
        if (raw)
            out += ',' + fixed9(row.raw_weak.value_or(0.0)) + ',' +
                   fixed9(row.raw_strong.value_or(0.0));
        out += "\n";
    }
    for (const LevelSummary& s : profile.summary)
        out += "# summary level=" + std::to_string(s.level) +
               " cleared=" + std::to_string(s.cleared_count) +
               " max_cleared_n=" + std::to_string(s.max_cleared_n) +
               " depth_indicated=" + (s.depth_indicated ? "1" : "0") + "\n";
    return out;
}

std::string render_bennett_csv(const std::string& source_label, const RegistrySpec& reg,
                               const std::vector<BennettRow>& rows) {
    std::string out;
    echo(out, "source", source_label);
    echo(out, "registry", reg.to_string());
    out += "n,budget,code_bits,code_bits_full,gap_bits\n";
    for (const BennettRow& r : rows)
        out += std::to_string(r.n) + ',' + std::to_string(r.budget) + ',' +
               std::to_string(r.code_bits) + ',' + std::to_string(r.code_bits_full) + ',' +
               std::to_string(r.gap_bits) + "\n";
    return out;
}

std::map<std::string, std::string> parse_config_echo(const std::string& csv) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t eol = csv.find('\n', pos);
        if (eol == std::string::npos) eol = csv.size();
        if (csv.compare(pos, 2, "# ") == 0) {
            std::string line = csv.substr(pos + 2, eol - pos - 2);
            std::size_t eq = line.find('=');
            if (eq != std::string::npos && line.rfind("summary ", 0) != 0)
                out[line.substr(0, eq)] = line.substr(eq + 1);
        }
        pos = eol + 1;
    }
    return out;
}

}  // namespace depthlab
