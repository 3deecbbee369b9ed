#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "depthlab/errors.hpp"
#include "depthlab/predictors.hpp"
#include "depthlab/sequences.hpp"

using namespace depthlab;

namespace {

Bits random_bits(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> bit(0, 1);
    Bits out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(char('0' + bit(rng)));
    return out;
}

double capital(const PredictorSpec& p, const Bits& w) { return std::exp2(martingale_log(p, w)); }

}  // namespace

TEST_CASE("predictions are complementary probabilities") {
    std::mt19937_64 rng(5);
    std::vector<PredictorSpec> preds = {{PredictorKind::Uniform},
                                        {PredictorKind::Frequency},
                                        {PredictorKind::Markov, 1},
                                        {PredictorKind::Markov, 3}};
    for (int i = 0; i < 100; ++i) {
        Bits h = random_bits(rng, 20);
        for (const auto& p : preds) {
            auto [p0, p1] = predict(p, nth_string(h.size()), h);
            CHECK(p0 + p1 == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(p0 > 0.0);
            CHECK(p1 > 0.0);
        }
    }
}

TEST_CASE("uniform predictor keeps capital at exactly 1") {
    for (const char* w : {"0", "1", "010011", "11111111"}) {
        CHECK(martingale_log({PredictorKind::Uniform}, w) == 0.0);
        CHECK(predictor_perf({PredictorKind::Uniform}, w).value == 0.0);
    }
}

TEST_CASE("frequency predictor on the all-zero prefix") {
    // capital = 2^4 * (1/2)(2/3)(3/4)(4/5) = 16/5
    PredictorSpec freq{PredictorKind::Frequency};
    CHECK(martingale_log(freq, "0000") == doctest::Approx(std::log2(3.2)).epsilon(1e-12));
    CHECK(predictor_perf(freq, "0000").value ==
          doctest::Approx(std::log2(3.2) / 4.0).epsilon(1e-12));
}

TEST_CASE("markov order 0 equals frequency") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        Bits w = random_bits(rng, 40);
        if (w.empty()) continue;
        CHECK(martingale_log({PredictorKind::Markov, 0}, w) ==
              doctest::Approx(martingale_log({PredictorKind::Frequency}, w)).epsilon(1e-12));
    }
}

TEST_CASE("martingale fairness: d(w0) + d(w1) = 2 d(w)") {
    std::mt19937_64 rng(23);
    std::vector<PredictorSpec> preds = {{PredictorKind::Uniform},
                                        {PredictorKind::Frequency},
                                        {PredictorKind::Markov, 1},
                                        {PredictorKind::Markov, 2}};
    for (int i = 0; i < 200; ++i) {
        Bits w = random_bits(rng, std::uniform_int_distribution<std::size_t>(0, 14)(rng));
        for (const auto& p : preds) {
            double lhs = capital(p, w + '0') + capital(p, w + '1');
            double rhs = 2.0 * capital(p, w);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("betting game equals the product martingale") {
    std::mt19937_64 rng(31);
    std::vector<PredictorSpec> preds = {{PredictorKind::Frequency}, {PredictorKind::Markov, 2}};
    for (int i = 0; i < 100; ++i) {
        Bits w = random_bits(rng, 64);
        for (const auto& p : preds) {
            CapitalTrace t = betting_game_trace(p, w);
            REQUIRE(t.log2_values.size() == w.size() + 1);
            CHECK(t.log2_values.front() == 0.0);
            CHECK(t.log2_values.back() ==
                  doctest::Approx(martingale_log(p, w)).epsilon(1e-9));
            // every intermediate point is the martingale on the prefix
            std::size_t mid = w.size() / 2;
            CHECK(t.log2_values[mid] ==
                  doctest::Approx(martingale_log(p, w.substr(0, mid))).epsilon(1e-9));
        }
    }
}

TEST_CASE("oracle predictor is perfect on its target and refuses beyond it") {
    Bits target = generate(SequenceSpec::parse("prng:3"), 64);
    PredictorSpec oracle{PredictorKind::Oracle, 0, target};
    CHECK(predictor_perf(oracle, target).value == 1.0);
    CHECK(martingale_log(oracle, target) == doctest::Approx(64.0));
    // betting the wrong way loses everything
    Bits flipped = target;
    flipped[0] = flipped[0] == '0' ? '1' : '0';
    CHECK(martingale_log(oracle, flipped) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(martingale_log(oracle, target + "0"), DomainError);
}

TEST_CASE("markov predictors learn periodic structure") {
    Bits w = generate(SequenceSpec::parse("periodic:0011"), 512);
    double m2 = predictor_perf({PredictorKind::Markov, 2}, w).value;
    double m1 = predictor_perf({PredictorKind::Markov, 1}, w).value;
    CHECK(m2 > 0.9);   // order 2 determines the next bit of 0011 repetition
    CHECK(m1 == 0.0);  // order 1 is blind to it: both successors equally likely
    CHECK_THROWS_AS(predictor_perf({PredictorKind::Frequency}, ""), ConfigError);
}
