#include "doctest.h"

#include <cstdlib>

#include "depthlab/analyzer.hpp"
#include "depthlab/errors.hpp"
#include "depthlab/report.hpp"

using namespace depthlab;

namespace {

HierarchySpec fst_hierarchy(std::uint32_t k, StrongSide side = StrongSide::SameFamily) {
    HierarchySpec h;
    h.family = HierarchyFamily::Fst;
    h.strong_side = side;
    h.max_level = k;
    h.fst_l_max = 1;
    return h;
}

HierarchySpec registry_hierarchy(const std::string& names) {
    HierarchySpec h;
    h.family = HierarchyFamily::Registry;
    h.registry = RegistrySpec::parse(names);
    h.max_level = static_cast<std::uint32_t>(h.registry.entries.size());
    return h;
}

HierarchySpec predictor_hierarchy(std::uint32_t max_order) {
    HierarchySpec h;
    h.family = HierarchyFamily::Predictor;
    h.max_level = max_order;
    return h;
}

Transducer delta_coder() {
    Transducer m;
    m.state_count = 2;
    m.start = 0;
    m.edges = {{Transducer::Edge{0, "0"}, Transducer::Edge{1, "1"}},
               {Transducer::Edge{0, "1"}, Transducer::Edge{1, "0"}}};
    return m;
}

}  // namespace

TEST_CASE("level_perf ground truths") {
    // one-state IL machines (identity, negation) cannot shorten anything
    CHECK(level_perf("01010101", fst_hierarchy(1), 1).value == 0.0);
    // registry budget 2 of [identity, lz78] compresses the zero string well
    Bits zeros(1024, '0');
    HierarchySpec reg = registry_hierarchy("identity,lz78");
    CHECK(level_perf(zeros, reg, 2).value >= 0.4);
    CHECK(level_perf(zeros, reg, 2).value == doctest::Approx(1.0 - 253.0 / 1024).epsilon(1e-12));
    CHECK(level_perf(zeros, reg, 1).value == 0.0);
    // uniform-only floor of the predictor family
    CHECK(level_perf("0110", predictor_hierarchy(0), 0).value >= 0.0);
    CHECK_THROWS_AS(level_perf("01", fst_hierarchy(1), 2), ConfigError);
}

TEST_CASE("level_perf is monotone in the resource level") {
    Bits zeros(512, '0');
    HierarchySpec reg = registry_hierarchy("identity,lz78");
    CHECK(level_perf(zeros, reg, 1).value <= level_perf(zeros, reg, 2).value);
    Bits w = generate(SequenceSpec::parse("periodic:0011"), 512);
    HierarchySpec pred = predictor_hierarchy(3);
    double prev = -1.0;
    for (std::uint32_t r = 0; r <= 3; ++r) {
        double v = level_perf(w, pred, r).value;
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(level_perf(w, fst_hierarchy(1), 1).value <= level_perf(w, fst_hierarchy(2), 2).value);
}

TEST_CASE("single-level same-family profiles have zero gaps") {
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("prng:11"));
    DepthProfile p = depth_profile(src, fst_hierarchy(1), BoundSpec::linear(0.1), {64, 128});
    REQUIRE(p.rows.size() == 2);
    for (const ProfileRow& row : p.rows) {
        CHECK(row.record.gap == 0.0);
        CHECK(!row.record.cleared);
    }
    for (const LevelSummary& s : p.summary) CHECK(s.cleared_count == 0);
}

TEST_CASE("periodic 01 clears nothing under the fst hierarchy") {
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("periodic:01"));
    DepthProfile p = depth_profile(src, fst_hierarchy(2), BoundSpec::linear(0.25),
                                   {256, 512, 1024});
    for (const ProfileRow& row : p.rows) {
        if (row.record.n >= 512) CHECK(!row.record.cleared);
        CHECK(row.record.gap >= 0.0);  // same-family strong side of a monotone family
    }
}

TEST_CASE("rows are ordered n-major level-minor and recompute their flags") {
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("champernowne"));
    DepthProfile p = depth_profile(src, predictor_hierarchy(2), BoundSpec::loglog(1), {32, 64});
    REQUIRE(p.rows.size() == 6);
    CHECK(p.rows[0].record.n == 32);
    CHECK(p.rows[2].record.n == 32);
    CHECK(p.rows[3].record.n == 64);
    std::uint32_t last_level = 0;
    for (const ProfileRow& row : p.rows) {
        CHECK(row.record.cleared ==
              depth_condition(row.record.gap, row.record.n, p.bound));
        CHECK(row.raw_weak.has_value());
        last_level = row.weak_level;
    }
    CHECK(last_level == 2);
}

TEST_CASE("full-family strong side pits every level against the top") {
    Bits zeros(512, '0');
    PrefixSource src = PrefixSource::from_raw(zeros, "zeros");
    HierarchySpec h = registry_hierarchy("identity,lz78");
    h.strong_side = StrongSide::FullFamily;
    DepthProfile p = depth_profile(src, h, BoundSpec::linear(0.05), {512});
    REQUIRE(p.rows.size() == 2);
    // budget 1 vs full: the lz78 side wins by far more than 5%
    CHECK(p.rows[0].record.cleared);
    // top level against itself: zero gap
    CHECK(p.rows[1].record.gap == 0.0);
    CHECK(!p.rows[1].record.cleared);
}

TEST_CASE("depth indication needs three cleared rows") {
    Bits zeros(4096, '0');
    PrefixSource src = PrefixSource::from_raw(zeros, "zeros");
    HierarchySpec h = registry_hierarchy("identity,lz78");
    h.strong_side = StrongSide::FullFamily;
    DepthProfile p = depth_profile(src, h, BoundSpec::linear(0.05), {512, 1024, 2048, 4096});
    REQUIRE(p.summary.size() == 2);
    CHECK(p.summary[0].cleared_count == 4);
    CHECK(p.summary[0].depth_indicated);
    CHECK(p.summary[0].max_cleared_n == 4096);
    CHECK(!p.summary[1].depth_indicated);
}

TEST_CASE("schedule validation") {
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("periodic:1"));
    CHECK_THROWS_AS(depth_profile(src, fst_hierarchy(1), BoundSpec::constant(1), {}),
                    ConfigError);
    CHECK_THROWS_AS(depth_profile(src, fst_hierarchy(1), BoundSpec::constant(1), {64, 64}),
                    ConfigError);
    CHECK_THROWS_AS(depth_profile(src, fst_hierarchy(1), BoundSpec::constant(1), {128, 64}),
                    ConfigError);
    CHECK_THROWS_AS(PrefixSource::from_raw("0101", "x").prefix(5), ConfigError);
}

TEST_CASE("slow growth: identity transformation changes nothing") {
    Transducer id;
    id.state_count = 1;
    id.start = 0;
    id.edges = {{Transducer::Edge{0, "0"}, Transducer::Edge{0, "1"}}};
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("periodic:0011"));
    auto [a, b] = slow_growth_experiment(src, id, fst_hierarchy(2), BoundSpec::linear(0.1),
                                         {128, 256});
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].record.n == b.rows[i].record.n);
        CHECK(a.rows[i].record.gap == b.rows[i].record.gap);
        CHECK(a.rows[i].record.perf_weak.value == b.rows[i].record.perf_weak.value);
    }
}

TEST_CASE("slow growth: delta-coded periodic input stays shallow") {
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("periodic:0011"));
    auto [a, b] = slow_growth_experiment(src, delta_coder(), fst_hierarchy(3),
                                         BoundSpec::linear(0.1), {512, 1024});
    for (const ProfileRow& row : b.rows) CHECK(!row.record.cleared);
    for (const ProfileRow& row : a.rows) CHECK(!row.record.cleared);
}

TEST_CASE("slow growth rejects non-IL machines") {
    Transducer drop;
    drop.state_count = 1;
    drop.start = 0;
    drop.edges = {{Transducer::Edge{0, ""}, Transducer::Edge{0, "1"}}};
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("periodic:01"));
    CHECK_THROWS_AS(slow_growth_experiment(src, drop, fst_hierarchy(1), BoundSpec::linear(0.1),
                                           {64}),
                    DomainError);
}

TEST_CASE("toy Bennett profile") {
    PrefixSource zeros = PrefixSource::from_spec(SequenceSpec::parse("periodic:0"));
    RegistrySpec reg = RegistrySpec::parse("identity,lz78");
    std::vector<BennettRow> rows = bennett_toy_profile(zeros, reg, {512, 1024, 2048});
    REQUIRE(rows.size() == 6);
    for (const BennettRow& r : rows) {
        if (r.budget == 2) CHECK(r.gap_bits == 0);  // gap to itself
        if (r.budget == 1) CHECK(r.gap_bits > static_cast<std::int64_t>(0.4 * r.n));
        CHECK(r.gap_bits == static_cast<std::int64_t>(r.code_bits) -
                                static_cast<std::int64_t>(r.code_bits_full));
    }
    PrefixSource noise = PrefixSource::from_spec(SequenceSpec::parse("prng:5"));
    for (const BennettRow& r : bennett_toy_profile(noise, reg, {512, 1024}))
        CHECK(std::abs(r.gap_bits) <= 1);
}

TEST_CASE("profile CSV rendering and config echo round trip") {
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("periodic:01"));
    DepthProfile p = depth_profile(src, fst_hierarchy(2), BoundSpec::linear(0.25), {64});
    std::string csv = render_profile_csv(p);
    CHECK(csv.find("n,family,weak_level,strong_side,perf_weak,perf_strong,gap,threshold,cleared\n") !=
          std::string::npos);
    CHECK(csv.find("64,fst,1,same-family,") != std::string::npos);
    auto echo = parse_config_echo(csv);
    CHECK(echo.at("source") == "periodic:01");
    CHECK(echo.at("family") == "fst");
    CHECK(echo.at("strong_side") == "same-family");
    CHECK(echo.at("max_level") == "2");
    CHECK(echo.at("l_max") == "1");
    CHECK(echo.at("bound") == "linear:0.25");
    // the echo reconstructs an equivalent configuration
    CHECK(BoundSpec::parse(echo.at("bound")).to_string() == p.bound.to_string());
    CHECK(SequenceSpec::parse(echo.at("source")).to_string() == src.label);

    // predictor reports carry the raw capital columns
    DepthProfile q = depth_profile(src, predictor_hierarchy(1), BoundSpec::loglog(1), {64});
    CHECK(render_profile_csv(q).find(",raw_weak,raw_strong\n") != std::string::npos);
}

TEST_CASE("bennett CSV rendering") {
    RegistrySpec reg = RegistrySpec::parse("identity,lz78");
    PrefixSource src = PrefixSource::from_spec(SequenceSpec::parse("periodic:0"));
    std::string csv = render_bennett_csv(src.label, reg, bennett_toy_profile(src, reg, {512}));
    CHECK(csv.find("n,budget,code_bits,code_bits_full,gap_bits\n") != std::string::npos);
    CHECK(csv.find("512,1,512,162,350\n") != std::string::npos);
    CHECK(csv.find("512,2,162,162,0\n") != std::string::npos);
    CHECK(parse_config_echo(csv).at("registry") == "identity,lz78");
}
