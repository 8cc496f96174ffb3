#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "riskcast/edge.hpp"
#include "riskcast/hac.hpp"
#include "riskcast/io.hpp"
#include "riskcast/meta.hpp"
#include "riskcast/risk.hpp"
#include "riskcast/series.hpp"
#include "riskcast/simulate.hpp"

namespace riskcast {

enum class ReportFormat { structured, delimited, markdown };

inline const char* to_string(ReportFormat f) {
    switch (f) {
        case ReportFormat::structured: return "json";
        case ReportFormat::delimited: return "csv";
        case ReportFormat::markdown: return "markdown";
    }
    return "json";
}

inline ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json" || s == "structured") return ReportFormat::structured;
    if (s == "csv" || s == "delimited") return ReportFormat::delimited;
    if (s == "markdown" || s == "md") return ReportFormat::markdown;
    throw ValidationError("unknown output format: '" + s + "'");
}

// ---------------------------------------------------------------------------
// Evaluation input: the loaded panels (one per available scoring rule) plus
// the raw forecast table when one exists, so rho(1) can be taken on errors.

struct EvaluationInput {
    DatasetManifest manifest;
    std::vector<LossPanel> panels;
    std::optional<ForecastTable> forecasts;
};

inline EvaluationInput load_evaluation_input(const std::string& path,
                                             const DatasetManifest& manifest) {
    EvaluationInput input;
    input.manifest = manifest;
    if (manifest.input_kind == InputKind::forecasts) {
        input.forecasts = load_forecasts(path, manifest);
        input.panels.push_back(panel_from_forecasts(*input.forecasts, ScoringRule::squared_error,
                                                    manifest.benchmark_id));
        input.panels.push_back(panel_from_forecasts(*input.forecasts, ScoringRule::absolute_error,
                                                    manifest.benchmark_id));
    } else {
        input.panels.push_back(load_panel(path, manifest));
    }
    return input;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> window_range(
    const std::vector<std::string>& period_labels, const std::string& start,
    const std::string& end) {
    std::size_t lo = 0, hi = period_labels.empty() ? 0 : period_labels.size() - 1;
    if (!start.empty()) {
        const auto it = std::find(period_labels.begin(), period_labels.end(), start);
        if (it == period_labels.end())
            throw ValidationError("window start '" + start + "' not found in panel");
        lo = static_cast<std::size_t>(it - period_labels.begin());
    }
    if (!end.empty()) {
        const auto it = std::find(period_labels.begin(), period_labels.end(), end);
        if (it == period_labels.end())
            throw ValidationError("window end '" + end + "' not found in panel");
        hi = static_cast<std::size_t>(it - period_labels.begin());
    }
    if (lo > hi) throw ValidationError("window start is after window end");
    return {lo, hi};
}

}  // namespace detail

// Restrict a panel to the inclusive [start, end] period-label range. Empty
// labels leave the corresponding end open.
inline LossPanel slice_panel(const LossPanel& panel, const std::string& start,
                             const std::string& end) {
    if (start.empty() && end.empty()) return panel;
    const auto [lo, hi] = detail::window_range(panel.period_labels, start, end);
    LossPanel out;
    out.model_ids = panel.model_ids;
    out.rule = panel.rule;
    out.benchmark_index = panel.benchmark_index;
    const std::size_t K = panel.pool_size();
    for (std::size_t t = lo; t <= hi; ++t) {
        out.period_labels.push_back(panel.period_labels[t]);
        for (std::size_t k = 0; k < K; ++k) out.losses.push_back(panel.loss(t, k));
    }
    return out;
}

inline ForecastTable slice_forecasts(const ForecastTable& table, const std::string& start,
                                     const std::string& end) {
    if (start.empty() && end.empty()) return table;
    const auto [lo, hi] = detail::window_range(table.period_labels, start, end);
    ForecastTable out;
    out.model_ids = table.model_ids;
    const std::size_t K = table.model_ids.size();
    for (std::size_t t = lo; t <= hi; ++t) {
        out.period_labels.push_back(table.period_labels[t]);
        out.actuals.push_back(table.actuals[t]);
        for (std::size_t k = 0; k < K; ++k) out.forecasts.push_back(table.forecast(t, k));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation report model

struct RiskRow {
    std::string model;
    double mean_return = 0.0;
    double sharpe = 0.0;
    double sortino = 0.0;
    double omega = 0.0;
    double max_drawdown = 0.0;  // depth >= 0; table emitters print -MaxDD
    double edge = 0.0;
};

struct RiskPanelReport {
    ScoringRule rule = ScoringRule::external;
    std::vector<RiskRow> rows;
};

struct ClassicalRow {
    std::string model;
    double rmse_ratio = 0.0;
    double mae_ratio = 0.0;
    double rho1 = 0.0;
    double dm_stat = 0.0;
    bool lrv_floored = false;
};

struct EvaluationReport {
    std::string benchmark;
    std::vector<std::string> models;  // report order (sorted by label)
    std::string window_start, window_end;
    std::size_t periods = 0;
    std::string hac_kernel;
    std::size_t hac_lag = 0;
    std::string rho1_basis;  // "errors" or "losses"
    std::string pool_hash;
    std::vector<RiskPanelReport> panels;
    std::vector<ClassicalRow> classical;
    bool highlights = true;
};

struct EvaluateOptions {
    std::string benchmark;             // empty: take the manifest's
    std::vector<std::string> models;   // empty: every non-benchmark column
    HacConfig hac;
    std::string window_start, window_end;
    bool highlights = true;
};

// Flag-level HAC resolution: an explicit lag pins it, otherwise a supplied
// horizon gives lag = horizon - 1 (direct multi-step forecasts overlap), and
// the cube-root rule of thumb covers the rest.
inline HacConfig make_hac_config(const std::string& kernel, const std::string& lag,
                                 std::optional<int> horizon) {
    HacConfig cfg;
    cfg.kernel = hac_kernel_from_string(kernel.empty() ? "bartlett" : kernel);
    if (lag.empty() || lag == "auto") {
        if (horizon) {
            cfg.lag_rule = LagRule::horizon_minus_one;
            cfg.horizon = static_cast<std::size_t>(*horizon);
        } else {
            cfg.lag_rule = LagRule::rule_of_thumb;
        }
        return cfg;
    }
    char* end = nullptr;
    const long value = std::strtol(lag.c_str(), &end, 10);
    if (end != lag.c_str() + lag.size() || value < 0)
        throw ValidationError("--hac-lag must be a nonnegative integer or 'auto', got '" + lag +
                              "'");
    cfg.lag_rule = LagRule::fixed;
    cfg.max_lag = static_cast<std::size_t>(value);
    return cfg;
}

namespace detail {

inline std::vector<double> returns_against(const LossPanel& panel, std::size_t bench,
                                           std::size_t model) {
    std::vector<double> out;
    out.reserve(panel.periods());
    for (std::size_t t = 0; t < panel.periods(); ++t)
        out.push_back(panel.loss(t, bench) - panel.loss(t, model));
    return out;
}

inline double guarded_ratio(double model_metric, double benchmark_metric) {
    if (!(benchmark_metric > 0.0)) return undefined_value();
    return model_metric / benchmark_metric;
}

}  // namespace detail

inline EvaluationReport build_evaluation_report(const EvaluationInput& input,
                                                const EvaluateOptions& opts) {
    if (input.panels.empty()) throw ValidationError("no panels loaded");

    EvaluationReport report;
    report.benchmark = opts.benchmark.empty() ? input.manifest.benchmark_id : opts.benchmark;
    report.window_start = opts.window_start;
    report.window_end = opts.window_end;
    report.highlights = opts.highlights;

    std::vector<LossPanel> panels;
    panels.reserve(input.panels.size());
    for (const LossPanel& p : input.panels)
        panels.push_back(slice_panel(p, opts.window_start, opts.window_end));
    std::optional<ForecastTable> forecasts;
    if (input.forecasts)
        forecasts = slice_forecasts(*input.forecasts, opts.window_start, opts.window_end);

    const LossPanel& lead = panels.front();
    const auto bench_idx = lead.index_of(report.benchmark);
    if (!bench_idx)
        throw ValidationError("benchmark '" + report.benchmark + "' not found in panel");
    report.periods = lead.periods();
    report.pool_hash = pool_hash(lead);

    report.models = opts.models;
    if (report.models.empty()) {
        for (const std::string& id : lead.model_ids)
            if (id != report.benchmark) report.models.push_back(id);
    }
    std::sort(report.models.begin(), report.models.end());
    for (const std::string& id : report.models)
        if (!lead.index_of(id))
            throw ValidationError("requested model '" + id + "' not found in panel");

    report.hac_kernel = to_string(opts.hac.kernel);
    report.hac_lag = resolve_lag(opts.hac, report.periods);

    // Risk panels, one per loaded scoring rule.
    for (const LossPanel& panel : panels) {
        RiskPanelReport panel_report;
        panel_report.rule = panel.rule;
        const std::size_t b = *panel.index_of(report.benchmark);
        for (const std::string& id : report.models) {
            const std::size_t k = *panel.index_of(id);
            const std::vector<double> gains = detail::returns_against(panel, b, k);
            const RiskReport risk = risk_report(gains);
            RiskRow row;
            row.model = id;
            row.mean_return = risk.mean_return;
            row.sharpe = risk.sharpe;
            row.sortino = risk.sortino;
            row.omega = risk.omega;
            row.max_drawdown = risk.max_drawdown;
            row.edge = edge_ratio(panel, k);
            panel_report.rows.push_back(std::move(row));
        }
        report.panels.push_back(std::move(panel_report));
    }

    // Classical accuracy panel.
    const LossPanel* squared = nullptr;
    const LossPanel* absolute = nullptr;
    for (const LossPanel& panel : panels) {
        if (panel.rule == ScoringRule::squared_error) squared = &panel;
        if (panel.rule == ScoringRule::absolute_error) absolute = &panel;
    }
    const LossPanel& dm_panel = squared ? *squared : panels.front();
    const std::size_t dm_bench = *dm_panel.index_of(report.benchmark);
    report.rho1_basis = forecasts ? "errors" : "losses";

    for (const std::string& id : report.models) {
        ClassicalRow row;
        row.model = id;
        row.rmse_ratio = undefined_value();
        row.mae_ratio = undefined_value();
        if (squared) {
            const std::size_t b = *squared->index_of(report.benchmark);
            const std::size_t k = *squared->index_of(id);
            row.rmse_ratio = detail::guarded_ratio(std::sqrt(mean(squared->column(k))),
                                                   std::sqrt(mean(squared->column(b))));
        }
        if (absolute) {
            const std::size_t b = *absolute->index_of(report.benchmark);
            const std::size_t k = *absolute->index_of(id);
            row.mae_ratio = detail::guarded_ratio(mean(absolute->column(k)),
                                                  mean(absolute->column(b)));
        }
        if (forecasts) {
            std::size_t k = 0;
            while (k < forecasts->model_ids.size() && forecasts->model_ids[k] != id) ++k;
            row.rho1 = autocorr1(forecasts->errors(k));
        } else {
            row.rho1 = autocorr1(dm_panel.column(*dm_panel.index_of(id)));
        }
        const std::vector<double> gains =
            detail::returns_against(dm_panel, dm_bench, *dm_panel.index_of(id));
        const LongRunVariance lrv = long_run_variance(gains, opts.hac);
        row.lrv_floored = lrv.floored;
        row.dm_stat = dm_statistic(gains, opts.hac);
        report.classical.push_back(std::move(row));
    }

    return report;
}

// ---------------------------------------------------------------------------
// Meta report model: one section per metric, one row per model, Table-style
// columns Return/Vol/Sharpe/Sortino/Omega/Edge over the cross-section.

struct MetaRow {
    std::string model;
    std::size_t cells = 0;
    double mean_return = 0.0;
    double vol = 0.0;
    double sharpe = 0.0;
    double sortino = 0.0;
    double omega = 0.0;
    double edge = 0.0;
};

struct MetaSection {
    std::string metric;
    std::string pool_hash;
    std::vector<MetaRow> rows;
};

struct MetaReport {
    std::string benchmark;
    std::string normalization;
    std::vector<MetaSection> sections;
    bool highlights = true;
};

struct MetaOptions {
    MetaNormalization normalization = MetaNormalization::ratio_percent;
    std::vector<std::string> models;  // empty: every non-benchmark model
    bool highlights = true;
};

inline MetaReport build_meta_report(const MetaGrid& grid, const MetaOptions& opts) {
    validate_grid(grid);
    MetaReport report;
    report.benchmark = grid.benchmark_model;
    report.normalization = to_string(opts.normalization);
    report.highlights = opts.highlights;

    for (const std::string& metric : grid.metrics()) {
        const MetaGrid sub = grid.filter_metric(metric);
        MetaSection section;
        section.metric = metric;
        section.pool_hash = pool_hash(sub.models());

        std::vector<std::string> models = opts.models;
        if (models.empty()) {
            for (const std::string& id : sub.models())
                if (id != sub.benchmark_model) models.push_back(id);
        }
        std::sort(models.begin(), models.end());

        for (const std::string& id : models) {
            const MetaReturns returns = meta_returns(sub, id, opts.normalization);
            const MetaMetrics metrics = meta_metrics(returns);
            MetaRow row;
            row.model = id;
            row.cells = metrics.cells;
            row.mean_return = metrics.mean;
            row.vol = metrics.vol;
            row.sharpe = metrics.sharpe;
            row.sortino = metrics.sortino;
            row.omega = metrics.omega;
            try {
                row.edge = meta_edge(sub, id);
            } catch (const ValidationError&) {
                row.edge = undefined_value();  // pool too small or ragged; rest still reports
            }
            section.rows.push_back(std::move(row));
        }
        report.sections.push_back(std::move(section));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Plot data: cumulative gain and drawdown paths per model, for external
// plotting tools.

struct PlotSeries {
    std::string model;
    std::vector<std::string> periods;
    std::vector<double> cumulative_gain;
    std::vector<double> drawdown_path;
};

inline std::vector<PlotSeries> build_plot_data(const EvaluationInput& input,
                                               const EvaluateOptions& opts) {
    if (input.panels.empty()) throw ValidationError("no panels loaded");
    const LossPanel* source = &input.panels.front();
    for (const LossPanel& p : input.panels)
        if (p.rule == ScoringRule::squared_error) source = &p;
    const LossPanel panel = slice_panel(*source, opts.window_start, opts.window_end);

    const std::string benchmark =
        opts.benchmark.empty() ? input.manifest.benchmark_id : opts.benchmark;
    const auto bench_idx = panel.index_of(benchmark);
    if (!bench_idx) throw ValidationError("benchmark '" + benchmark + "' not found in panel");

    std::vector<std::string> models = opts.models;
    if (models.empty()) {
        for (const std::string& id : panel.model_ids)
            if (id != benchmark) models.push_back(id);
    }
    std::sort(models.begin(), models.end());

    std::vector<PlotSeries> out;
    for (const std::string& id : models) {
        const auto k = panel.index_of(id);
        if (!k) throw ValidationError("requested model '" + id + "' not found in panel");
        const std::vector<double> gains = detail::returns_against(panel, *bench_idx, *k);
        PlotSeries series;
        series.model = id;
        if (!panel.period_labels.empty()) {
            series.periods = panel.period_labels;
        } else {
            for (std::size_t t = 1; t <= gains.size(); ++t)
                series.periods.push_back(std::to_string(t));
        }
        double cumulative = 0.0;
        for (double g : gains) {
            cumulative += g;
            series.cumulative_gain.push_back(cumulative);
        }
        series.drawdown_path = drawdown(gains).path;
        out.push_back(std::move(series));
    }
    return out;
}

}  // namespace riskcast
