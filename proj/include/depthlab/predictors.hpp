#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/core.hpp"

namespace depthlab {

// Oblivious predictors assign complementary probabilities p(x,0) + p(x,1) = 1 to
// the membership of each query string. The smoothed kinds condition on the
// revealed characteristic prefix (passed as history); Uniform ignores it.
enum class PredictorKind { Uniform, Frequency, Markov, Oracle };

struct PredictorSpec {
    PredictorKind kind = PredictorKind::Uniform;
    std::uint32_t order = 0;  // Markov
    Bits oracle_target;       // Oracle (test-only): the characteristic prefix it knows

    std::string name() const;
};

// (p0, p1) with p0 + p1 = 1. Smoothed kinds are strictly inside (0,1);
// Oracle may emit {0,1}.
std::pair<double, double> predict(const PredictorSpec& pred, const Bits& query,
                                  const Bits& history);

// log2 of the martingale capital after |w| rounds: n + sum_i log2 p(s_i, w[i]).
// -infinity when some factor is zero.
double martingale_log(const PredictorSpec& pred, const Bits& w);

// Round-by-round capital of the fair betting game, as log2 values.
// Entry 0 is 0 (capital 1); entry n matches martingale_log on the length-n prefix.
struct CapitalTrace {
    std::vector<double> log2_values;
};

CapitalTrace betting_game_trace(const PredictorSpec& pred, const Bits& w);

// clamp(martingale_log / |w|, 0, 1)
PerformanceValue predictor_perf(const PredictorSpec& pred, const Bits& w);

}  // namespace depthlab
