#include "depthlab/predictors.hpp"

#include <cmath>
#include <limits>

#include "depthlab/errors.hpp"
#include "depthlab/sequences.hpp"

namespace depthlab {

namespace {

// Add-one-smoothed conditional p1 given the last `order` revealed bits.
// When the history is shorter than the order, the whole history is the context.
double smoothed_p1(const Bits& history, std::uint32_t order) {
    std::size_t ctx_len = std::min<std::size_t>(order, history.size());
    const char* ctx = history.data() + history.size() - ctx_len;
    std::uint64_t c0 = 0, c1 = 0;
    for (std::size_t i = ctx_len; i < history.size(); ++i) {
        if (history.compare(i - ctx_len, ctx_len, ctx, ctx_len) == 0) {
            if (history[i] == '1')
                ++c1;
            else
                ++c0;
        }
    }
    return (static_cast<double>(c1) + 1.0) / (static_cast<double>(c0 + c1) + 2.0);
}

}  // namespace

std::pair<double, double> predict(const PredictorSpec& pred, const Bits& query,
                                  const Bits& history) {
    switch (pred.kind) {
        case PredictorKind::Uniform:
            return {0.5, 0.5};
        case PredictorKind::Frequency: {
            double p1 = smoothed_p1(history, 0);
            return {1.0 - p1, p1};
        }
        case PredictorKind::Markov: {
            double p1 = smoothed_p1(history, pred.order);
            return {1.0 - p1, p1};
        }
        case PredictorKind::Oracle: {
            std::uint64_t i = string_rank(query);
            if (i >= pred.oracle_target.size())
                throw DomainError("oracle predictor queried beyond its target");
            return pred.oracle_target[i] == '1' ? std::make_pair(0.0, 1.0)
                                                : std::make_pair(1.0, 0.0);
        }
    }
    throw ConfigError("predict: bad kind");
}

double martingale_log(const PredictorSpec& pred, const Bits& w) {
    double sum = static_cast<double>(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto [p0, p1] = predict(pred, nth_string(i), w.substr(0, i));
        double p = w[i] == '1' ? p1 : p0;
        if (p <= 0.0) return -std::numeric_limits<double>::infinity();
        sum += std::log2(p);
    }
    return sum;
}

CapitalTrace betting_game_trace(const PredictorSpec& pred, const Bits& w) {
    CapitalTrace trace;
    trace.log2_values.reserve(w.size() + 1);
    long double capital = 1.0L;
    trace.log2_values.push_back(0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto [p0, p1] = predict(pred, nth_string(i), w.substr(0, i));
        // stake fraction p1 on membership, p0 on the complement;
        // the correct side is doubled, the other side is lost
        long double on_correct = capital * static_cast<long double>(w[i] == '1' ? p1 : p0);
        capital = 2.0L * on_correct;
        trace.log2_values.push_back(
            capital > 0.0L ? static_cast<double>(std::log2(capital))
                           : -std::numeric_limits<double>::infinity());
    }
    return trace;
}

PerformanceValue predictor_perf(const PredictorSpec& pred, const Bits& w) {
    if (w.empty()) throw ConfigError("predictor_perf: empty prefix");
    return clamp_perf(martingale_log(pred, w) / static_cast<double>(w.size()));
}

std::string PredictorSpec::name() const {
    switch (kind) {
        case PredictorKind::Uniform: return "uniform";
        case PredictorKind::Frequency: return "frequency";
        case PredictorKind::Markov: return "markov:" + std::to_string(order);
        case PredictorKind::Oracle: return "oracle";
    }
    return "";
}

}  // namespace depthlab
