#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "riskcast/errors.hpp"

namespace riskcast {

enum class ScoringRule { squared_error, absolute_error, external };

inline const char* to_string(ScoringRule rule) {
    switch (rule) {
        case ScoringRule::squared_error: return "squared_error";
        case ScoringRule::absolute_error: return "absolute_error";
        case ScoringRule::external: return "external";
    }
    return "external";
}

inline ScoringRule scoring_rule_from_string(const std::string& s) {
    if (s == "squared_error") return ScoringRule::squared_error;
    if (s == "absolute_error") return ScoringRule::absolute_error;
    if (s == "external") return ScoringRule::external;
    throw ValidationError("unknown scoring rule: '" + s + "'");
}

// Realized losses of one model under one scoring rule, one value per period.
// Lower is always better; higher-is-better inputs are negated at ingestion.
struct LossSeries {
    std::string model_id;
    ScoringRule rule = ScoringRule::external;
    std::vector<double> values;
    std::vector<std::string> period_labels;  // empty when unlabeled
};

// Per-period benchmark-minus-model loss differentials. Positive values mean
// the model beat the benchmark that period.
struct ReturnSeries {
    std::string model_id;
    std::string benchmark_id;
    ScoringRule rule = ScoringRule::external;
    std::vector<double> values;
};

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

inline void validate_loss_series(const LossSeries& s) {
    if (s.values.empty()) throw ValidationError("loss series '" + s.model_id + "' is empty");
    if (!all_finite(s.values))
        throw ValidationError("loss series '" + s.model_id + "' contains non-finite values");
    if (s.rule != ScoringRule::external) {
        for (double x : s.values) {
            if (x < 0.0)
                throw ValidationError("loss series '" + s.model_id +
                                      "' has negative losses under a nonnegative scoring rule");
        }
    }
    if (!s.period_labels.empty() && s.period_labels.size() != s.values.size())
        throw AlignmentError("loss series '" + s.model_id + "': " +
                             std::to_string(s.period_labels.size()) + " period labels for " +
                             std::to_string(s.values.size()) + " values");
}

inline void validate_return_series(const ReturnSeries& r) {
    if (r.values.empty()) throw ValidationError("return series is empty");
    if (!all_finite(r.values)) throw ValidationError("return series contains non-finite values");
    if (r.model_id == r.benchmark_id && !r.model_id.empty())
        throw ValidationError("return series compares model '" + r.model_id + "' to itself");
}

// Per-period losses from actuals and forecasts under a concrete rule.
// External losses never pass through here; they enter via ingestion.
inline LossSeries compute_losses(const std::vector<double>& actuals,
                                 const std::vector<double>& forecasts, ScoringRule rule,
                                 std::string model_id = std::string(),
                                 std::vector<std::string> period_labels = {}) {
    if (rule == ScoringRule::external)
        throw ValidationError("external losses cannot be computed from forecasts");
    if (actuals.size() != forecasts.size())
        throw AlignmentError("actuals/forecasts length mismatch: " +
                             std::to_string(actuals.size()) + " vs " +
                             std::to_string(forecasts.size()));
    if (actuals.empty()) throw ValidationError("empty forecast table");
    if (!all_finite(actuals) || !all_finite(forecasts))
        throw ValidationError("non-finite actual or forecast value");

    LossSeries out;
    out.model_id = std::move(model_id);
    out.rule = rule;
    out.period_labels = std::move(period_labels);
    out.values.reserve(actuals.size());
    for (std::size_t t = 0; t < actuals.size(); ++t) {
        const double e = actuals[t] - forecasts[t];
        out.values.push_back(rule == ScoringRule::squared_error ? e * e : std::fabs(e));
    }
    validate_loss_series(out);
    return out;
}

// Forecast gains of `model` over `benchmark`: values[t] = benchmark - model.
inline ReturnSeries return_series(const LossSeries& benchmark, const LossSeries& model) {
    validate_loss_series(benchmark);
    validate_loss_series(model);
    if (benchmark.values.size() != model.values.size())
        throw AlignmentError("loss series length mismatch: '" + benchmark.model_id + "' has " +
                             std::to_string(benchmark.values.size()) + " periods, '" +
                             model.model_id + "' has " + std::to_string(model.values.size()));
    if (benchmark.rule != model.rule)
        throw ValidationError("scoring rule mismatch between '" + benchmark.model_id + "' and '" +
                              model.model_id + "'");
    if (!benchmark.period_labels.empty() && !model.period_labels.empty() &&
        benchmark.period_labels != model.period_labels)
        throw AlignmentError("period labels differ between '" + benchmark.model_id + "' and '" +
                             model.model_id + "'");

    ReturnSeries out;
    out.model_id = model.model_id;
    out.benchmark_id = benchmark.model_id;
    out.rule = model.rule;
    out.values.reserve(model.values.size());
    for (std::size_t t = 0; t < model.values.size(); ++t)
        out.values.push_back(benchmark.values[t] - model.values[t]);
    return out;
}

inline double mean(const std::vector<double>& v) {
    if (v.empty()) throw InsufficientDataError("mean of empty sequence");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double mean_return(const ReturnSeries& r) {
    validate_return_series(r);
    return mean(r.values);
}

}  // namespace riskcast
