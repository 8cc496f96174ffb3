#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "riskcast/risk.hpp"
#include "riskcast/series.hpp"

namespace riskcast {

// T x K matrix of per-period losses for a pool of K models, row-major.
struct LossPanel {
    std::vector<std::string> model_ids;      // K, unique
    std::vector<std::string> period_labels;  // T, or empty when unlabeled
    std::vector<double> losses;              // T * K, row-major
    std::optional<std::size_t> benchmark_index;
    ScoringRule rule = ScoringRule::external;

    std::size_t periods() const { return model_ids.empty() ? 0 : losses.size() / model_ids.size(); }
    std::size_t pool_size() const { return model_ids.size(); }
    double loss(std::size_t t, std::size_t k) const { return losses[t * model_ids.size() + k]; }
    double& loss(std::size_t t, std::size_t k) { return losses[t * model_ids.size() + k]; }

    std::vector<double> column(std::size_t k) const {
        std::vector<double> out;
        out.reserve(periods());
        for (std::size_t t = 0; t < periods(); ++t) out.push_back(loss(t, k));
        return out;
    }

    std::optional<std::size_t> index_of(const std::string& id) const {
        for (std::size_t k = 0; k < model_ids.size(); ++k)
            if (model_ids[k] == id) return k;
        return std::nullopt;
    }

    LossSeries series(std::size_t k) const {
        return LossSeries{model_ids[k], rule, column(k), period_labels};
    }
};

inline void validate_panel(const LossPanel& panel) {
    const std::size_t K = panel.model_ids.size();
    if (K < 2) throw ValidationError("loss panel needs at least 2 models, got " + std::to_string(K));
    if (panel.losses.empty() || panel.losses.size() % K != 0)
        throw ValidationError("loss panel is ragged: " + std::to_string(panel.losses.size()) +
                              " entries for " + std::to_string(K) + " models");
    if (!all_finite(panel.losses)) throw ValidationError("loss panel contains non-finite values");
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j)
            if (panel.model_ids[i] == panel.model_ids[j])
                throw ValidationError("duplicate model id '" + panel.model_ids[i] + "' in panel");
    if (!panel.period_labels.empty() && panel.period_labels.size() != panel.periods())
        throw AlignmentError("panel has " + std::to_string(panel.period_labels.size()) +
                             " period labels for " + std::to_string(panel.periods()) + " rows");
    if (panel.benchmark_index && *panel.benchmark_index >= K)
        throw ValidationError("benchmark index out of range");
}

// Per-period minimum loss over all pool members except `exclude`.
inline std::vector<double> frontier(const LossPanel& panel, std::size_t exclude) {
    const std::size_t K = panel.pool_size();
    if (K < 2) throw ValidationError("frontier needs a pool of at least 2 models");
    if (exclude >= K) throw ValidationError("excluded model index out of range");
    std::vector<double> out;
    out.reserve(panel.periods());
    for (std::size_t t = 0; t < panel.periods(); ++t) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K; ++k) {
            if (k == exclude) continue;
            best = std::min(best, panel.loss(t, k));
        }
        out.push_back(best);
    }
    return out;
}

// Frontier-relative gains of one model, split into wins (model strictly at
// the frontier) and regrets (distance behind the best competitor). A tie
// with the frontier contributes to neither side.
struct EdgeSeries {
    std::string model_id;
    std::vector<double> edges;    // frontier - model loss
    std::vector<double> wins;     // max(edge, 0)
    std::vector<double> regrets;  // max(-edge, 0)
    std::size_t pool_size = 0;    // K, counting the evaluated model
};

inline EdgeSeries edge_series(const LossPanel& panel, std::size_t model) {
    const std::vector<double> front = frontier(panel, model);
    EdgeSeries out;
    out.model_id = panel.model_ids[model];
    out.pool_size = panel.pool_size();
    out.edges.reserve(front.size());
    out.wins.reserve(front.size());
    out.regrets.reserve(front.size());
    for (std::size_t t = 0; t < front.size(); ++t) {
        const double e = front[t] - panel.loss(t, model);
        out.edges.push_back(e);
        out.wins.push_back(std::max(e, 0.0));
        out.regrets.push_back(std::max(-e, 0.0));
    }
    return out;
}

// (sum of wins / sum of regrets) * (K - 1), K counting the evaluated model.
// Zero total wins give exactly 0; zero regrets with positive wins give +inf;
// a model that ties the frontier everywhere is undefined.
inline double edge_ratio(const EdgeSeries& s) {
    double win_sum = 0.0, regret_sum = 0.0;
    for (double w : s.wins) win_sum += w;
    for (double g : s.regrets) regret_sum += g;
    if (win_sum == 0.0 && regret_sum == 0.0) return undefined_value();
    if (win_sum == 0.0) return 0.0;
    if (regret_sum == 0.0) return infinity_value(1.0);
    return win_sum / regret_sum * static_cast<double>(s.pool_size - 1);
}

inline double edge_ratio(const LossPanel& panel, std::size_t model) {
    return edge_ratio(edge_series(panel, model));
}

// FNV-1a hash of the ordered model id list. Edge ratios only compare across
// runs when the pool is identical, so reports carry this alongside them.
inline std::string pool_hash(const std::vector<std::string>& model_ids) {
    std::uint64_t h = 1469598103934665603ull;
    for (const std::string& id : model_ids) {
        for (unsigned char c : id) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= static_cast<unsigned char>('|');
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline std::string pool_hash(const LossPanel& panel) { return pool_hash(panel.model_ids); }

}  // namespace riskcast
