#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "riskcast/series.hpp"

namespace riskcast {

// Degenerate denominators produce sentinels instead of exceptions so that
// reports stay total: 0/0 -> undefined (NaN), x/0 -> signed infinity.
inline double undefined_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_undefined(double x) { return std::isnan(x); }
inline double infinity_value(double sign) {
    return std::copysign(std::numeric_limits<double>::infinity(), sign);
}

enum class VarianceConvention { sample_Tminus1, population_T };

inline double variance(const std::vector<double>& v, VarianceConvention convention) {
    if (v.size() < 2) throw InsufficientDataError("variance needs at least 2 observations");
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    const double divisor = convention == VarianceConvention::sample_Tminus1
                               ? static_cast<double>(v.size() - 1)
                               : static_cast<double>(v.size());
    return ss / divisor;
}

// Mean gain per unit of gain volatility. The sample (T-1) deviation is the
// reporting default; population_T exists for the exact DM identity at lag 0.
inline double sharpe_ratio(const std::vector<double>& r,
                           VarianceConvention convention = VarianceConvention::sample_Tminus1) {
    const double m = mean(r);
    const double s = std::sqrt(variance(r, convention));
    if (s == 0.0) return m == 0.0 ? undefined_value() : infinity_value(m);
    return m / s;
}

// Root-mean of squared negative gains. The divisor is T over all periods,
// zeros included, not the count of losing periods.
inline double downside_deviation(const std::vector<double>& r) {
    if (r.empty()) throw InsufficientDataError("downside deviation of empty sequence");
    double ss = 0.0;
    for (double x : r) {
        const double d = std::min(x, 0.0);
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(r.size()));
}

inline double sortino_ratio(const std::vector<double>& r) {
    const double m = mean(r);
    const double s = downside_deviation(r);
    if (s == 0.0) return m == 0.0 ? undefined_value() : infinity_value(m);
    return m / s;
}

// Total upside over total downside; the 1/T factors cancel. An all-zero
// series is neutral by convention and maps to 1.
inline double omega_ratio(const std::vector<double>& r) {
    if (r.empty()) throw InsufficientDataError("omega ratio of empty sequence");
    double up = 0.0, down = 0.0;
    for (double x : r) {
        if (x > 0.0)
            up += x;
        else
            down -= x;
    }
    if (down == 0.0) return up == 0.0 ? 1.0 : infinity_value(1.0);
    return up / down;
}

struct DrawdownResult {
    std::vector<double> path;  // DD_t >= 0 for t = 1..T
    double max_drawdown = 0.0;
};

// Drawdown of cumulative summed gains, running peak seeded at zero. A series
// that starts negative draws down immediately from the zero peak.
inline DrawdownResult drawdown(const std::vector<double>& r) {
    if (r.empty()) throw InsufficientDataError("drawdown of empty sequence");
    DrawdownResult out;
    out.path.reserve(r.size());
    double cumulative = 0.0;
    double peak = 0.0;
    for (double x : r) {
        cumulative += x;
        peak = std::max(peak, cumulative);
        const double dd = peak - cumulative;
        out.path.push_back(dd);
        out.max_drawdown = std::max(out.max_drawdown, dd);
    }
    return out;
}

// The full per-series metric bundle. max_drawdown is kept nonnegative here;
// table emitters print it negated.
struct RiskReport {
    double mean_return = 0.0;
    double volatility = 0.0;          // sample (T-1) deviation
    double downside_deviation = 0.0;  // divisor T
    double sharpe = 0.0;
    double sortino = 0.0;
    double omega = 0.0;
    double max_drawdown = 0.0;
    std::vector<double> drawdown_path;
    double upside_mean = 0.0;
    double downside_mean = 0.0;
};

inline RiskReport risk_report(const std::vector<double>& r) {
    if (r.size() < 2) throw InsufficientDataError("risk report needs at least 2 observations");
    RiskReport out;
    out.mean_return = mean(r);
    out.volatility = std::sqrt(variance(r, VarianceConvention::sample_Tminus1));
    out.downside_deviation = downside_deviation(r);
    out.sharpe = sharpe_ratio(r);
    out.sortino = sortino_ratio(r);
    out.omega = omega_ratio(r);
    DrawdownResult dd = drawdown(r);
    out.max_drawdown = dd.max_drawdown;
    out.drawdown_path = std::move(dd.path);
    double up = 0.0, down = 0.0;
    for (double x : r) {
        if (x > 0.0)
            up += x;
        else
            down -= x;
    }
    out.upside_mean = up / static_cast<double>(r.size());
    out.downside_mean = down / static_cast<double>(r.size());
    return out;
}

inline double sharpe_ratio(const ReturnSeries& r,
                           VarianceConvention convention = VarianceConvention::sample_Tminus1) {
    return sharpe_ratio(r.values, convention);
}
inline double sortino_ratio(const ReturnSeries& r) { return sortino_ratio(r.values); }
inline double omega_ratio(const ReturnSeries& r) { return omega_ratio(r.values); }
inline DrawdownResult drawdown(const ReturnSeries& r) { return drawdown(r.values); }
inline RiskReport risk_report(const ReturnSeries& r) { return risk_report(r.values); }

}  // namespace riskcast
