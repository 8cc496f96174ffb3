#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "riskcast/edge.hpp"
#include "riskcast/risk.hpp"
#include "riskcast/series.hpp"

namespace riskcast {

// One scalar performance value: model x (target, horizon, design) x metric.
// Values are lower-is-better, like losses.
struct MetaCell {
    std::string target;
    std::string horizon;
    std::string design;
    std::string model;
    std::string metric;
    double value = 0.0;
    std::size_t line = 0;  // source line for diagnostics, 0 when synthetic
};

struct MetaGrid {
    std::vector<MetaCell> cells;
    std::string benchmark_model;

    std::vector<std::string> metrics() const {
        std::set<std::string> seen;
        for (const MetaCell& c : cells) seen.insert(c.metric);
        return {seen.begin(), seen.end()};
    }

    std::vector<std::string> models() const {
        std::set<std::string> seen;
        for (const MetaCell& c : cells) seen.insert(c.model);
        return {seen.begin(), seen.end()};
    }

    MetaGrid filter_metric(const std::string& metric) const {
        MetaGrid out;
        out.benchmark_model = benchmark_model;
        for (const MetaCell& c : cells)
            if (c.metric == metric) out.cells.push_back(c);
        return out;
    }
};

inline std::string cell_key(const MetaCell& c) {
    return c.target + "|" + c.horizon + "|" + c.design;
}

// Unique (cell, model, metric) keys; a benchmark value in every populated
// cell; finite values.
inline void validate_grid(const MetaGrid& grid) {
    if (grid.cells.empty()) throw ValidationError("meta grid is empty");
    if (grid.benchmark_model.empty()) throw ValidationError("meta grid has no benchmark model");
    std::map<std::string, std::size_t> seen;
    std::set<std::string> cells_with_benchmark;
    std::set<std::string> all_cells;
    for (const MetaCell& c : grid.cells) {
        if (!std::isfinite(c.value))
            throw ValidationError("non-finite value for model '" + c.model + "' in cell " +
                                  cell_key(c));
        const std::string key = cell_key(c) + "|" + c.metric + "|" + c.model;
        auto [it, inserted] = seen.emplace(key, c.line);
        if (!inserted)
            throw ValidationError("duplicate entry for model '" + c.model + "' in cell " +
                                  cell_key(c) + " (lines " + std::to_string(it->second) + " and " +
                                  std::to_string(c.line) + ")");
        const std::string cell = cell_key(c) + "|" + c.metric;
        all_cells.insert(cell);
        if (c.model == grid.benchmark_model) cells_with_benchmark.insert(cell);
    }
    for (const std::string& cell : all_cells)
        if (!cells_with_benchmark.count(cell))
            throw ValidationError("cell " + cell + " lacks the benchmark model '" +
                                  grid.benchmark_model + "'");
}

enum class MetaNormalization { ratio_percent, raw_difference };

inline const char* to_string(MetaNormalization n) {
    return n == MetaNormalization::ratio_percent ? "ratio_percent" : "raw_difference";
}

// Cross-sectional returns of one model over the design space, one value per
// cell, ordered by cell key for determinism.
struct MetaReturns {
    std::string model;
    std::vector<double> returns;
    std::vector<std::string> cell_keys;
};

namespace detail {

// cell key -> (benchmark value, model value) over the cells the model
// populates; requires a single metric.
inline std::map<std::string, std::pair<double, double>> paired_cells(const MetaGrid& grid,
                                                                     const std::string& model) {
    if (grid.metrics().size() > 1)
        throw ValidationError("grid mixes metrics; filter to a single metric first");
    std::map<std::string, double> bench, mine;
    for (const MetaCell& c : grid.cells) {
        if (c.model == grid.benchmark_model) bench[cell_key(c)] = c.value;
        if (c.model == model) mine[cell_key(c)] = c.value;
    }
    if (mine.empty()) throw ValidationError("model '" + model + "' not present in grid");
    std::map<std::string, std::pair<double, double>> cells;
    for (const auto& [key, value] : mine) {
        const auto it = bench.find(key);
        if (it == bench.end())
            throw ValidationError("cell " + key + " lacks the benchmark model '" +
                                  grid.benchmark_model + "'");
        cells[key] = {it->second, value};
    }
    return cells;
}

}  // namespace detail

// Percentage improvement of the model over the benchmark per cell:
// 100 * (P_B - P_M) / P_B, so a ratio of 0.90 is a 10% return. Benchmark
// values must be strictly positive for the ratio form; raw_difference is the
// documented fallback for sign-unstable metrics such as log scores.
inline MetaReturns meta_returns(const MetaGrid& grid, const std::string& model,
                                MetaNormalization normalization) {
    validate_grid(grid);
    MetaReturns out;
    out.model = model;
    for (const auto& [key, pair] : detail::paired_cells(grid, model)) {
        const auto [bench, value] = pair;
        double ret = 0.0;
        if (normalization == MetaNormalization::ratio_percent) {
            if (bench <= 0.0)
                throw ValidationError("benchmark value " + std::to_string(bench) + " in cell " +
                                      key +
                                      " is not positive; use raw_difference normalization");
            // 100 - 100 * ratio keeps round decimal inputs exact (a 0.90
            // ratio is exactly a 10% return).
            ret = 100.0 - 100.0 * (value / bench);
        } else {
            ret = bench - value;
        }
        out.returns.push_back(ret);
        out.cell_keys.push_back(key);
    }
    return out;
}

// The per-series bundle applied to the cross-section. No drawdown: cells
// are unordered.
struct MetaMetrics {
    std::size_t cells = 0;
    double mean = 0.0;
    double vol = 0.0;  // sample (N-1) deviation
    double sharpe = 0.0;
    double sortino = 0.0;
    double omega = 0.0;
};

inline MetaMetrics meta_metrics(const MetaReturns& ret) {
    if (ret.returns.size() < 2)
        throw InsufficientDataError("meta metrics need at least 2 cells, got " +
                                    std::to_string(ret.returns.size()));
    MetaMetrics out;
    out.cells = ret.returns.size();
    out.mean = mean(ret.returns);
    out.vol = std::sqrt(variance(ret.returns, VarianceConvention::sample_Tminus1));
    out.sharpe = sharpe_ratio(ret.returns);
    out.sortino = sortino_ratio(ret.returns);
    out.omega = omega_ratio(ret.returns);
    return out;
}

// Loss panel over cells instead of periods: every cell must hold the same
// model pool. Feeds the edge machinery unchanged.
inline LossPanel panel_from_grid(const MetaGrid& grid) {
    validate_grid(grid);
    if (grid.metrics().size() > 1)
        throw ValidationError("grid mixes metrics; filter to a single metric first");
    const std::vector<std::string> models = grid.models();
    std::map<std::string, std::map<std::string, double>> by_cell;  // cell -> model -> value
    for (const MetaCell& c : grid.cells) by_cell[cell_key(c)][c.model] = c.value;

    LossPanel panel;
    panel.model_ids = models;
    panel.rule = ScoringRule::external;
    panel.benchmark_index = 0;
    for (std::size_t k = 0; k < models.size(); ++k)
        if (models[k] == grid.benchmark_model) panel.benchmark_index = k;
    for (const auto& [cell, values] : by_cell) {
        if (values.size() != models.size())
            throw ValidationError("cell " + cell + " holds " + std::to_string(values.size()) +
                                  " of " + std::to_string(models.size()) +
                                  " pool models; edge needs a consistent pool");
        panel.period_labels.push_back(cell);
        for (const std::string& m : models) panel.losses.push_back(values.at(m));
    }
    validate_panel(panel);
    return panel;
}

inline double meta_edge(const MetaGrid& grid, const std::string& model) {
    const LossPanel panel = panel_from_grid(grid);
    const auto idx = panel.index_of(model);
    if (!idx) throw ValidationError("model '" + model + "' not present in grid");
    return edge_ratio(panel, *idx);
}

// Plain metric ratio, the RMSE/MAE-relative-to-benchmark convention.
inline double relative_ratio(double model_metric, double benchmark_metric) {
    if (!(benchmark_metric > 0.0))
        throw ValidationError("relative ratio needs a positive benchmark metric, got " +
                              std::to_string(benchmark_metric));
    return model_metric / benchmark_metric;
}

}  // namespace riskcast
