#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "riskcast/risk.hpp"
#include "riskcast/series.hpp"

namespace riskcast {

enum class HacKernel { bartlett, truncated_uniform };

inline const char* to_string(HacKernel k) {
    return k == HacKernel::bartlett ? "bartlett" : "truncated_uniform";
}

inline HacKernel hac_kernel_from_string(const std::string& s) {
    if (s == "bartlett") return HacKernel::bartlett;
    if (s == "truncated_uniform" || s == "truncated") return HacKernel::truncated_uniform;
    throw ValidationError("unknown HAC kernel: '" + s + "'");
}

enum class LagRule { fixed, horizon_minus_one, rule_of_thumb };

struct HacConfig {
    HacKernel kernel = HacKernel::bartlett;
    LagRule lag_rule = LagRule::rule_of_thumb;
    std::size_t max_lag = 0;  // used when lag_rule == fixed
    std::size_t horizon = 1;  // used when lag_rule == horizon_minus_one
};

// Resolves the truncation lag for a series of length T. rule_of_thumb is
// floor(1.5 * T^(1/3)). Rule-derived lags are clamped to T-1; an explicit
// fixed lag must already satisfy max_lag < T.
inline std::size_t resolve_lag(const HacConfig& cfg, std::size_t T) {
    if (T == 0) throw InsufficientDataError("empty series");
    std::size_t lag = 0;
    switch (cfg.lag_rule) {
        case LagRule::fixed:
            if (cfg.max_lag >= T)
                throw ValidationError("HAC lag " + std::to_string(cfg.max_lag) +
                                      " out of range for series of length " + std::to_string(T));
            return cfg.max_lag;
        case LagRule::horizon_minus_one:
            lag = cfg.horizon > 0 ? cfg.horizon - 1 : 0;
            break;
        case LagRule::rule_of_thumb:
            lag = static_cast<std::size_t>(std::floor(1.5 * std::cbrt(static_cast<double>(T))));
            break;
    }
    return std::min(lag, T - 1);
}

// Lag-k autocovariance with the 1/T divisor at every lag. The common divisor
// keeps the Bartlett-weighted sum positive semidefinite.
inline double autocovariance(const std::vector<double>& r, std::size_t k) {
    const std::size_t T = r.size();
    if (k >= T)
        throw ValidationError("autocovariance lag " + std::to_string(k) +
                              " out of range for series of length " + std::to_string(T));
    const double m = mean(r);
    double acc = 0.0;
    for (std::size_t t = k; t < T; ++t) acc += (r[t] - m) * (r[t - k] - m);
    return acc / static_cast<double>(T);
}

// First-order autocorrelation. Undefined (NaN) for constant sequences.
inline double autocorr1(const std::vector<double>& e) {
    if (e.size() < 2) throw InsufficientDataError("autocorrelation needs at least 2 observations");
    const double g0 = autocovariance(e, 0);
    if (g0 == 0.0) return undefined_value();
    return autocovariance(e, 1) / g0;
}

struct LongRunVariance {
    double value = 0.0;
    bool floored = false;  // truncated sum came out <= 0 and was floored
};

// HAC long-run variance: gamma_0 + 2 * sum of (weighted) autocovariances up
// to the resolved lag. truncated_uniform uses unit weights and can go
// negative; a nonpositive result is floored at 1e-12 * gamma_0 and flagged.
inline LongRunVariance long_run_variance(const std::vector<double>& r, const HacConfig& cfg) {
    const std::size_t K = resolve_lag(cfg, r.size());
    const double g0 = autocovariance(r, 0);
    double acc = g0;
    for (std::size_t k = 1; k <= K; ++k) {
        const double w = cfg.kernel == HacKernel::bartlett
                             ? 1.0 - static_cast<double>(k) / static_cast<double>(K + 1)
                             : 1.0;
        acc += 2.0 * w * autocovariance(r, k);
    }
    LongRunVariance out;
    if (acc <= 0.0) {
        out.value = 1e-12 * g0;
        out.floored = true;
    } else {
        out.value = acc;
    }
    return out;
}

// DM t-statistic: mean gain over sqrt(LRV / T). Undefined when the variance
// is degenerate even after flooring (constant series).
inline double dm_statistic(const std::vector<double>& r, const HacConfig& cfg) {
    if (r.size() < 2) throw InsufficientDataError("DM statistic needs at least 2 observations");
    const LongRunVariance lrv = long_run_variance(r, cfg);
    if (lrv.value <= 0.0) return undefined_value();
    return mean(r) / std::sqrt(lrv.value / static_cast<double>(r.size()));
}

inline double autocovariance(const ReturnSeries& r, std::size_t k) {
    return autocovariance(r.values, k);
}
inline LongRunVariance long_run_variance(const ReturnSeries& r, const HacConfig& cfg) {
    return long_run_variance(r.values, cfg);
}
inline double dm_statistic(const ReturnSeries& r, const HacConfig& cfg) {
    return dm_statistic(r.values, cfg);
}

}  // namespace riskcast
