#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "riskcast/io.hpp"
#include "riskcast/report.hpp"

namespace riskcast {

// ---------------------------------------------------------------------------
// Best / second-best flags for table output. The published tables bold the
// best and second-best entry of every row; directions follow the table
// conventions (drawdowns print negated, so "least negative" is best there).

enum class RankDirection { higher, lower, abs_smaller };

struct Highlight {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t best = npos;
    std::size_t second = npos;

    std::string tag(std::size_t i) const {
        if (i == best) return "best";
        if (i == second) return "second";
        return "";
    }
};

inline Highlight rank_values(const std::vector<double>& values, RankDirection direction) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isnan(values[i])) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        switch (direction) {
            case RankDirection::higher: return values[a] > values[b];
            case RankDirection::lower: return values[a] < values[b];
            case RankDirection::abs_smaller: return std::fabs(values[a]) < std::fabs(values[b]);
        }
        return false;
    });
    Highlight h;
    if (order.size() >= 2) h.best = order[0];    // flags are noise without a contest
    if (order.size() >= 3) h.second = order[1];  // a 2-column table has no runner-up worth noting
    return h;
}

namespace detail {

inline std::string panel_title(ScoringRule rule) {
    switch (rule) {
        case ScoringRule::squared_error: return "Squared Error";
        case ScoringRule::absolute_error: return "Absolute Error";
        case ScoringRule::external: return "External Loss";
    }
    return "External Loss";
}

inline std::string decorate(const std::string& text, const std::string& tag, bool enabled) {
    if (!enabled || tag.empty()) return text;
    if (tag == "best") return "**" + text + "**";
    return "*" + text + "*";
}

struct MetricRow {
    std::string label;                 // table label, e.g. "MaxDD"
    std::string key;                   // machine key, e.g. "max_drawdown"
    std::vector<double> values;        // one per model, already sign-adjusted
    RankDirection direction = RankDirection::higher;
};

inline std::vector<MetricRow> risk_panel_rows(const RiskPanelReport& panel) {
    std::vector<MetricRow> rows(6);
    rows[0] = {"Return", "return", {}, RankDirection::higher};
    rows[1] = {"Sharpe", "sharpe", {}, RankDirection::higher};
    rows[2] = {"Sortino", "sortino", {}, RankDirection::higher};
    rows[3] = {"Omega", "omega", {}, RankDirection::higher};
    rows[4] = {"MaxDD", "max_drawdown", {}, RankDirection::higher};  // printed negated
    rows[5] = {"Edge", "edge", {}, RankDirection::higher};
    for (const RiskRow& r : panel.rows) {
        rows[0].values.push_back(r.mean_return);
        rows[1].values.push_back(r.sharpe);
        rows[2].values.push_back(r.sortino);
        rows[3].values.push_back(r.omega);
        rows[4].values.push_back(-r.max_drawdown);
        rows[5].values.push_back(r.edge);
    }
    return rows;
}

inline std::vector<MetricRow> classical_rows(const std::vector<ClassicalRow>& classical) {
    std::vector<MetricRow> rows(4);
    rows[0] = {"RMSE", "rmse_ratio", {}, RankDirection::lower};
    rows[1] = {"MAE", "mae_ratio", {}, RankDirection::lower};
    rows[2] = {"rho(1)", "rho1", {}, RankDirection::abs_smaller};
    rows[3] = {"DM t-stat", "dm_tstat", {}, RankDirection::higher};
    for (const ClassicalRow& r : classical) {
        rows[0].values.push_back(r.rmse_ratio);
        rows[1].values.push_back(r.mae_ratio);
        rows[2].values.push_back(r.rho1);
        rows[3].values.push_back(r.dm_stat);
    }
    return rows;
}

inline bool all_undefined(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isnan(x)) return false;
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Evaluation report emitters

inline void write_markdown(const EvaluationReport& report, std::ostream& out) {
    out << "# Forecast evaluation vs " << report.benchmark << "\n\n";
    out << "- periods: " << report.periods;
    if (!report.window_start.empty() || !report.window_end.empty())
        out << " (window " << (report.window_start.empty() ? "start" : report.window_start)
            << " to " << (report.window_end.empty() ? "end" : report.window_end) << ")";
    out << "\n";
    out << "- HAC: " << report.hac_kernel << " kernel, lag " << report.hac_lag << "\n";
    out << "- rho(1) basis: " << report.rho1_basis << "\n";
    out << "- pool hash: " << report.pool_hash << "\n";
    std::string floored;
    for (const ClassicalRow& r : report.classical)
        if (r.lrv_floored) floored += (floored.empty() ? "" : ", ") + r.model;
    if (!floored.empty()) out << "- long-run variance floored for: " << floored << "\n";
    out << "\n";

    char letter = 'A';
    const auto emit_table = [&](const std::string& title,
                                const std::vector<detail::MetricRow>& rows) {
        out << "## Panel " << letter++ << ": " << title << "\n\n";
        out << "| Metric |";
        for (const std::string& m : report.models) out << " " << m << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < report.models.size(); ++i) out << "---:|";
        out << "\n";
        for (const detail::MetricRow& row : rows) {
            if (detail::all_undefined(row.values)) continue;
            const Highlight h = report.highlights ? rank_values(row.values, row.direction)
                                                  : Highlight{};
            out << "| " << row.label << " |";
            for (std::size_t i = 0; i < row.values.size(); ++i)
                out << " "
                    << detail::decorate(format_table_value(row.values[i]), h.tag(i),
                                        report.highlights)
                    << " |";
            out << "\n";
        }
        out << "\n";
    };

    for (const RiskPanelReport& panel : report.panels)
        emit_table(detail::panel_title(panel.rule), detail::risk_panel_rows(panel));
    emit_table("Classical Forecast Accuracy", detail::classical_rows(report.classical));
}

inline void write_delimited(const EvaluationReport& report, std::ostream& out) {
    out << "panel,metric,model,value,highlight\n";
    out << "info,benchmark,," << report.benchmark << ",\n";
    out << "info,periods,," << report.periods << ",\n";
    out << "info,hac_kernel,," << report.hac_kernel << ",\n";
    out << "info,hac_lag,," << report.hac_lag << ",\n";
    out << "info,rho1_basis,," << report.rho1_basis << ",\n";
    out << "info,pool_hash,," << report.pool_hash << ",\n";

    char letter = 'A';
    const auto emit_rows = [&](const std::vector<detail::MetricRow>& rows) {
        const char panel_letter = letter++;
        for (const detail::MetricRow& row : rows) {
            if (detail::all_undefined(row.values)) continue;
            const Highlight h = report.highlights ? rank_values(row.values, row.direction)
                                                  : Highlight{};
            for (std::size_t i = 0; i < row.values.size(); ++i)
                out << panel_letter << "," << row.key << "," << report.models[i] << ","
                    << format_table_value(row.values[i]) << "," << h.tag(i) << "\n";
        }
    };
    for (const RiskPanelReport& panel : report.panels) emit_rows(detail::risk_panel_rows(panel));
    emit_rows(detail::classical_rows(report.classical));
}

inline nlohmann::ordered_json to_json(const EvaluationReport& report) {
    nlohmann::ordered_json j;
    j["report"] = "evaluation";
    j["format_version"] = 1;
    j["benchmark"] = report.benchmark;
    j["models"] = report.models;
    j["periods"] = report.periods;
    j["window"] = {{"start", report.window_start}, {"end", report.window_end}};
    j["hac"] = {{"kernel", report.hac_kernel}, {"lag", report.hac_lag}};
    j["rho1_basis"] = report.rho1_basis;
    j["pool_hash"] = report.pool_hash;
    j["highlights"] = report.highlights;
    j["panels"] = nlohmann::ordered_json::array();
    for (const RiskPanelReport& panel : report.panels) {
        nlohmann::ordered_json jp;
        jp["rule"] = to_string(panel.rule);
        jp["rows"] = nlohmann::ordered_json::array();
        for (const RiskRow& r : panel.rows) {
            nlohmann::ordered_json jr;
            jr["model"] = r.model;
            jr["return"] = json_metric(r.mean_return);
            jr["sharpe"] = json_metric(r.sharpe);
            jr["sortino"] = json_metric(r.sortino);
            jr["omega"] = json_metric(r.omega);
            jr["max_drawdown"] = json_metric(r.max_drawdown);
            jr["edge"] = json_metric(r.edge);
            jp["rows"].push_back(std::move(jr));
        }
        j["panels"].push_back(std::move(jp));
    }
    j["classical"] = nlohmann::ordered_json::array();
    for (const ClassicalRow& r : report.classical) {
        nlohmann::ordered_json jr;
        jr["model"] = r.model;
        jr["rmse_ratio"] = json_metric(r.rmse_ratio);
        jr["mae_ratio"] = json_metric(r.mae_ratio);
        jr["rho1"] = json_metric(r.rho1);
        jr["dm_tstat"] = json_metric(r.dm_stat);
        jr["lrv_floored"] = r.lrv_floored;
        j["classical"].push_back(std::move(jr));
    }
    return j;
}

inline EvaluationReport evaluation_report_from_json(const nlohmann::ordered_json& j) {
    if (j.value("report", "") != std::string("evaluation"))
        throw ValidationError("not an evaluation report");
    EvaluationReport report;
    report.benchmark = j.at("benchmark").get<std::string>();
    report.models = j.at("models").get<std::vector<std::string>>();
    report.periods = j.at("periods").get<std::size_t>();
    report.window_start = j.at("window").at("start").get<std::string>();
    report.window_end = j.at("window").at("end").get<std::string>();
    report.hac_kernel = j.at("hac").at("kernel").get<std::string>();
    report.hac_lag = j.at("hac").at("lag").get<std::size_t>();
    report.rho1_basis = j.at("rho1_basis").get<std::string>();
    report.pool_hash = j.at("pool_hash").get<std::string>();
    report.highlights = j.at("highlights").get<bool>();
    for (const auto& jp : j.at("panels")) {
        RiskPanelReport panel;
        panel.rule = scoring_rule_from_string(jp.at("rule").get<std::string>());
        for (const auto& jr : jp.at("rows")) {
            RiskRow r;
            r.model = jr.at("model").get<std::string>();
            r.mean_return = metric_from_json(jr.at("return"));
            r.sharpe = metric_from_json(jr.at("sharpe"));
            r.sortino = metric_from_json(jr.at("sortino"));
            r.omega = metric_from_json(jr.at("omega"));
            r.max_drawdown = metric_from_json(jr.at("max_drawdown"));
            r.edge = metric_from_json(jr.at("edge"));
            panel.rows.push_back(std::move(r));
        }
        report.panels.push_back(std::move(panel));
    }
    for (const auto& jr : j.at("classical")) {
        ClassicalRow r;
        r.model = jr.at("model").get<std::string>();
        r.rmse_ratio = metric_from_json(jr.at("rmse_ratio"));
        r.mae_ratio = metric_from_json(jr.at("mae_ratio"));
        r.rho1 = metric_from_json(jr.at("rho1"));
        r.dm_stat = metric_from_json(jr.at("dm_tstat"));
        r.lrv_floored = jr.at("lrv_floored").get<bool>();
        report.classical.push_back(std::move(r));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Meta report emitters

inline void write_markdown(const MetaReport& report, std::ostream& out) {
    out << "# Meta evaluation vs " << report.benchmark << "\n\n";
    out << "- normalization: " << report.normalization << "\n\n";
    for (const MetaSection& section : report.sections) {
        out << "## " << section.metric << "\n\n";
        out << "- pool hash: " << section.pool_hash << "\n\n";
        out << "| Model | Cells | Return | Vol | Sharpe | Sortino | Omega | Edge |\n";
        out << "|---|---:|---:|---:|---:|---:|---:|---:|\n";

        std::vector<std::vector<double>> columns(6);
        for (const MetaRow& r : section.rows) {
            columns[0].push_back(r.mean_return);
            columns[1].push_back(r.vol);
            columns[2].push_back(r.sharpe);
            columns[3].push_back(r.sortino);
            columns[4].push_back(r.omega);
            columns[5].push_back(r.edge);
        }
        const RankDirection directions[6] = {RankDirection::higher, RankDirection::lower,
                                             RankDirection::higher, RankDirection::higher,
                                             RankDirection::higher, RankDirection::higher};
        std::vector<Highlight> highlights(6);
        if (report.highlights)
            for (std::size_t c = 0; c < 6; ++c) highlights[c] = rank_values(columns[c], directions[c]);

        for (std::size_t i = 0; i < section.rows.size(); ++i) {
            out << "| " << section.rows[i].model << " | " << section.rows[i].cells << " |";
            for (std::size_t c = 0; c < 6; ++c)
                out << " "
                    << detail::decorate(format_table_value(columns[c][i]), highlights[c].tag(i),
                                        report.highlights)
                    << " |";
            out << "\n";
        }
        out << "\n";
    }
}

inline void write_delimited(const MetaReport& report, std::ostream& out) {
    out << "section,metric,model,value,highlight\n";
    out << "info,benchmark,," << report.benchmark << ",\n";
    out << "info,normalization,," << report.normalization << ",\n";
    for (const MetaSection& section : report.sections) {
        out << "info,pool_hash," << section.metric << "," << section.pool_hash << ",\n";
        const char* keys[6] = {"return", "vol", "sharpe", "sortino", "omega", "edge"};
        const RankDirection directions[6] = {RankDirection::higher, RankDirection::lower,
                                             RankDirection::higher, RankDirection::higher,
                                             RankDirection::higher, RankDirection::higher};
        std::vector<std::vector<double>> columns(6);
        for (const MetaRow& r : section.rows) {
            columns[0].push_back(r.mean_return);
            columns[1].push_back(r.vol);
            columns[2].push_back(r.sharpe);
            columns[3].push_back(r.sortino);
            columns[4].push_back(r.omega);
            columns[5].push_back(r.edge);
        }
        for (std::size_t c = 0; c < 6; ++c) {
            const Highlight h =
                report.highlights ? rank_values(columns[c], directions[c]) : Highlight{};
            for (std::size_t i = 0; i < section.rows.size(); ++i)
                out << section.metric << "," << keys[c] << "," << section.rows[i].model << ","
                    << format_table_value(columns[c][i]) << "," << h.tag(i) << "\n";
        }
    }
}

inline nlohmann::ordered_json to_json(const MetaReport& report) {
    nlohmann::ordered_json j;
    j["report"] = "meta";
    j["format_version"] = 1;
    j["benchmark"] = report.benchmark;
    j["normalization"] = report.normalization;
    j["highlights"] = report.highlights;
    j["sections"] = nlohmann::ordered_json::array();
    for (const MetaSection& section : report.sections) {
        nlohmann::ordered_json js;
        js["metric"] = section.metric;
        js["pool_hash"] = section.pool_hash;
        js["rows"] = nlohmann::ordered_json::array();
        for (const MetaRow& r : section.rows) {
            nlohmann::ordered_json jr;
            jr["model"] = r.model;
            jr["cells"] = r.cells;
            jr["return"] = json_metric(r.mean_return);
            jr["vol"] = json_metric(r.vol);
            jr["sharpe"] = json_metric(r.sharpe);
            jr["sortino"] = json_metric(r.sortino);
            jr["omega"] = json_metric(r.omega);
            jr["edge"] = json_metric(r.edge);
            js["rows"].push_back(std::move(jr));
        }
        j["sections"].push_back(std::move(js));
    }
    return j;
}

inline MetaReport meta_report_from_json(const nlohmann::ordered_json& j) {
    if (j.value("report", "") != std::string("meta")) throw ValidationError("not a meta report");
    MetaReport report;
    report.benchmark = j.at("benchmark").get<std::string>();
    report.normalization = j.at("normalization").get<std::string>();
    report.highlights = j.at("highlights").get<bool>();
    for (const auto& js : j.at("sections")) {
        MetaSection section;
        section.metric = js.at("metric").get<std::string>();
        section.pool_hash = js.at("pool_hash").get<std::string>();
        for (const auto& jr : js.at("rows")) {
            MetaRow r;
            r.model = jr.at("model").get<std::string>();
            r.cells = jr.at("cells").get<std::size_t>();
            r.mean_return = metric_from_json(jr.at("return"));
            r.vol = metric_from_json(jr.at("vol"));
            r.sharpe = metric_from_json(jr.at("sharpe"));
            r.sortino = metric_from_json(jr.at("sortino"));
            r.omega = metric_from_json(jr.at("omega"));
            r.edge = metric_from_json(jr.at("edge"));
            section.rows.push_back(std::move(r));
        }
        report.sections.push_back(std::move(section));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Plot data and simulation summaries

inline std::string format_plot_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline void write_plot_data(const std::vector<PlotSeries>& series, std::ostream& out) {
    out << "model,period,cumulative_gain,drawdown\n";
    for (const PlotSeries& s : series)
        for (std::size_t t = 0; t < s.periods.size(); ++t)
            out << s.model << "," << s.periods[t] << "," << format_plot_value(s.cumulative_gain[t])
                << "," << format_plot_value(s.drawdown_path[t]) << "\n";
}

inline nlohmann::ordered_json sim_config_to_json(const SimConfig& cfg) {
    nlohmann::ordered_json j;
    j["pool_size"] = cfg.pool_size;
    j["periods"] = cfg.periods;
    j["replications"] = cfg.replications;
    j["loss_law"] = to_string(cfg.loss_law);
    j["student_df"] = json_metric(cfg.student_df);
    j["ar1_coefficient"] = json_metric(cfg.ar1_coefficient);
    j["drift"] = json_metric(cfg.drift);
    j["seed"] = cfg.seed;
    j["band"] = {json_metric(cfg.band_lo), json_metric(cfg.band_hi)};
    return j;
}

inline nlohmann::ordered_json to_json(const SimConfig& cfg, const NullEdgeResult& result) {
    nlohmann::ordered_json j;
    j["report"] = "simulation";
    j["format_version"] = 1;
    j["task"] = "null_edge";
    j["config"] = sim_config_to_json(cfg);
    nlohmann::ordered_json res;
    res["mean_edge"] = json_metric(result.mean_edge);
    res["within_band"] = result.within_band;
    res["win_frequency"] = nlohmann::ordered_json::array();
    for (double f : result.win_frequency) res["win_frequency"].push_back(json_metric(f));
    res["per_replication"] = nlohmann::ordered_json::array();
    for (double e : result.per_replication) res["per_replication"].push_back(json_metric(e));
    j["results"] = std::move(res);
    return j;
}

inline nlohmann::ordered_json to_json(const SimConfig& cfg, const DmPenaltyResult& result) {
    nlohmann::ordered_json j;
    j["report"] = "simulation";
    j["format_version"] = 1;
    j["task"] = "dm_penalty";
    j["config"] = sim_config_to_json(cfg);
    nlohmann::ordered_json res;
    res["mean_dm_k0"] = json_metric(result.mean_k0);
    res["mean_dm_bartlett"] = json_metric(result.mean_bartlett);
    res["mean_abs_dm_k0"] = json_metric(result.mean_abs_k0);
    res["mean_abs_dm_bartlett"] = json_metric(result.mean_abs_bartlett);
    res["dm_k0"] = nlohmann::ordered_json::array();
    for (double x : result.dm_k0) res["dm_k0"].push_back(json_metric(x));
    res["dm_bartlett"] = nlohmann::ordered_json::array();
    for (double x : result.dm_bartlett) res["dm_bartlett"].push_back(json_metric(x));
    j["results"] = std::move(res);
    return j;
}

// ---------------------------------------------------------------------------
// File-level entry points. Identical inputs produce byte-identical files.

inline void write_structured(const nlohmann::ordered_json& j, std::ostream& out) {
    out << j.dump(2) << "\n";
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

}  // namespace detail

template <typename Report>
void write_report(const Report& report, std::ostream& out, ReportFormat format) {
    switch (format) {
        case ReportFormat::structured: write_structured(to_json(report), out); break;
        case ReportFormat::delimited: write_delimited(report, out); break;
        case ReportFormat::markdown: write_markdown(report, out); break;
    }
}

template <typename Report>
void write_report(const Report& report, const std::string& path, ReportFormat format) {
    std::ofstream out = detail::open_output(path);
    write_report(report, out, format);
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline nlohmann::ordered_json read_structured(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline EvaluationReport read_evaluation_report(const std::string& path) {
    return evaluation_report_from_json(read_structured(path));
}

inline MetaReport read_meta_report(const std::string& path) {
    return meta_report_from_json(read_structured(path));
}

}  // namespace riskcast
