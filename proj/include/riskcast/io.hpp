#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "riskcast/edge.hpp"
#include "riskcast/errors.hpp"
#include "riskcast/meta.hpp"
#include "riskcast/series.hpp"
#include "riskcast/simulate.hpp"

namespace riskcast {

// ---------------------------------------------------------------------------
// Value formatting shared by every emitter. Deterministic byte output needs
// one formatting path, so nothing else in the library prints doubles.

// Table cells: fixed two decimals, like the published layouts.
inline std::string format_table_value(double x) {
    if (std::isnan(x)) return "na";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    if (std::strcmp(buf, "-0.00") == 0) return "0.00";
    return buf;
}

// Structured output: 6 significant digits. %.6g output parses back to the
// same double, which makes write -> load -> write a fixed point.
inline double round_sig6(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return std::strtod(buf, nullptr);
}

inline nlohmann::ordered_json json_metric(double x) {
    if (std::isnan(x)) return "undefined";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig6(x);
}

inline double metric_from_json(const nlohmann::ordered_json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "undefined") return undefined_value();
        if (s == "inf") return infinity_value(1.0);
        if (s == "-inf") return infinity_value(-1.0);
        throw ValidationError("unrecognized metric sentinel '" + s + "'");
    }
    return j.get<double>();
}

// ---------------------------------------------------------------------------
// Manifest

enum class InputKind { forecasts, losses, meta_grid };

inline const char* to_string(InputKind kind) {
    switch (kind) {
        case InputKind::forecasts: return "forecasts";
        case InputKind::losses: return "losses";
        case InputKind::meta_grid: return "meta_grid";
    }
    return "losses";
}

inline InputKind input_kind_from_string(const std::string& s) {
    if (s == "forecasts") return InputKind::forecasts;
    if (s == "losses") return InputKind::losses;
    if (s == "meta_grid") return InputKind::meta_grid;
    throw ValidationError("unknown input kind: '" + s + "'");
}

enum class SignConvention { lower_is_better, higher_is_better };

// Sidecar description of a data file. All internal values are
// lower-is-better; higher_is_better inputs are negated once on load.
struct DatasetManifest {
    int format_version = 1;
    InputKind input_kind = InputKind::losses;
    ScoringRule scoring_rule = ScoringRule::external;
    std::string benchmark_id;
    std::optional<int> horizon;
    SignConvention sign_convention = SignConvention::lower_is_better;
};

inline DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("manifest '" + path + "': " + e.what());
    }
    DatasetManifest m;
    m.format_version = j.value("format_version", 1);
    if (m.format_version != 1)
        throw ValidationError("manifest '" + path + "': unsupported format_version " +
                              std::to_string(m.format_version));
    if (!j.contains("input_kind"))
        throw ValidationError("manifest '" + path + "': missing input_kind");
    m.input_kind = input_kind_from_string(j.at("input_kind").get<std::string>());
    if (j.contains("scoring_rule"))
        m.scoring_rule = scoring_rule_from_string(j.at("scoring_rule").get<std::string>());
    m.benchmark_id = j.value("benchmark_id", std::string());
    if (m.benchmark_id.empty())
        throw ValidationError("manifest '" + path + "': missing benchmark_id");
    if (j.contains("horizon")) {
        const int h = j.at("horizon").get<int>();
        if (h < 1) throw ValidationError("manifest '" + path + "': horizon must be positive");
        m.horizon = h;
    }
    if (j.contains("sign_convention")) {
        const std::string s = j.at("sign_convention").get<std::string>();
        if (s == "lower_is_better")
            m.sign_convention = SignConvention::lower_is_better;
        else if (s == "higher_is_better")
            m.sign_convention = SignConvention::higher_is_better;
        else
            throw ValidationError("manifest '" + path + "': unknown sign_convention '" + s + "'");
    }
    return m;
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return s.substr(a, b - a);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline double parse_number(const std::string& cell, std::size_t line_no,
                           const std::string& column) {
    if (cell.empty())
        throw ValidationError("line " + std::to_string(line_no) + ", column '" + column +
                              "': empty cell");
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || errno == ERANGE)
        throw ValidationError("line " + std::to_string(line_no) + ", column '" + column +
                              "': non-numeric cell '" + cell + "'");
    return x;
}

}  // namespace detail

// Header plus raw string rows; `line_numbers` maps rows to 1-based file lines.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> cells = detail::split_csv_line(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size())
            throw ValidationError(path + ": line " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, header has " +
                                  std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    if (table.header.empty()) throw ValidationError(path + ": empty input");
    return table;
}

// ---------------------------------------------------------------------------
// Loss panels and forecast tables

// Wide forecast table: period, actual, one column per model.
struct ForecastTable {
    std::vector<std::string> period_labels;
    std::vector<double> actuals;
    std::vector<std::string> model_ids;
    std::vector<double> forecasts;  // T x K, row-major

    double forecast(std::size_t t, std::size_t k) const {
        return forecasts[t * model_ids.size() + k];
    }
    std::vector<double> errors(std::size_t k) const {  // actual - forecast
        std::vector<double> out;
        out.reserve(period_labels.size());
        for (std::size_t t = 0; t < period_labels.size(); ++t)
            out.push_back(actuals[t] - forecast(t, k));
        return out;
    }
};

namespace detail {

inline void check_periods_unique(const std::vector<std::string>& labels, const std::string& path) {
    std::set<std::string> seen;
    for (const std::string& p : labels)
        if (!seen.insert(p).second)
            throw ValidationError(path + ": duplicate period label '" + p + "'");
}

}  // namespace detail

inline ForecastTable load_forecasts(const std::string& path, const DatasetManifest& manifest) {
    if (manifest.input_kind != InputKind::forecasts)
        throw ValidationError(path + ": manifest input_kind is not 'forecasts'");
    const CsvTable csv = read_csv(path);
    if (csv.rows.empty()) throw ValidationError(path + ": no data rows");
    if (csv.header.size() < 3)
        throw ValidationError(path + ": need a period column, an 'actual' column and at least "
                              "one model column");

    ForecastTable out;
    std::size_t actual_col = 0;
    bool have_actual = false;
    for (std::size_t c = 1; c < csv.header.size(); ++c) {
        if (csv.header[c] == "actual") {
            actual_col = c;
            have_actual = true;
        } else {
            out.model_ids.push_back(csv.header[c]);
        }
    }
    if (!have_actual) throw ValidationError(path + ": forecasts input needs an 'actual' column");
    bool have_benchmark = false;
    for (const std::string& id : out.model_ids) have_benchmark |= id == manifest.benchmark_id;
    if (!have_benchmark)
        throw ValidationError(path + ": benchmark '" + manifest.benchmark_id + "' not found");

    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        out.period_labels.push_back(row[0]);
        for (std::size_t c = 1; c < csv.header.size(); ++c) {
            const double x = detail::parse_number(row[c], csv.line_numbers[r], csv.header[c]);
            if (c == actual_col)
                out.actuals.push_back(x);
            else
                out.forecasts.push_back(x);
        }
    }
    detail::check_periods_unique(out.period_labels, path);
    return out;
}

inline LossPanel panel_from_forecasts(const ForecastTable& table, ScoringRule rule,
                                      const std::string& benchmark_id) {
    if (rule == ScoringRule::external)
        throw ValidationError("cannot derive external losses from forecasts");
    LossPanel panel;
    panel.model_ids = table.model_ids;
    panel.period_labels = table.period_labels;
    panel.rule = rule;
    const std::size_t T = table.period_labels.size();
    const std::size_t K = table.model_ids.size();
    panel.losses.resize(T * K);
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> column;
        column.reserve(T);
        for (std::size_t t = 0; t < T; ++t) column.push_back(table.forecast(t, k));
        const LossSeries losses = compute_losses(table.actuals, column, rule, table.model_ids[k]);
        for (std::size_t t = 0; t < T; ++t) panel.losses[t * K + k] = losses.values[t];
    }
    panel.benchmark_index = panel.index_of(benchmark_id);
    if (!panel.benchmark_index)
        throw ValidationError("benchmark '" + benchmark_id + "' not found in forecast table");
    validate_panel(panel);
    return panel;
}

inline LossPanel load_panel(const std::string& path, const DatasetManifest& manifest) {
    if (manifest.input_kind == InputKind::meta_grid)
        throw ValidationError(path + ": meta_grid inputs load via load_meta_grid");
    if (manifest.input_kind == InputKind::forecasts)
        return panel_from_forecasts(load_forecasts(path, manifest), manifest.scoring_rule,
                                    manifest.benchmark_id);

    const CsvTable csv = read_csv(path);
    if (csv.rows.empty()) throw ValidationError(path + ": no data rows");
    if (csv.header.size() < 3)
        throw ValidationError(path + ": need a period column and at least 2 model columns");

    LossPanel panel;
    panel.rule = manifest.scoring_rule;
    panel.model_ids.assign(csv.header.begin() + 1, csv.header.end());
    const double sign = manifest.sign_convention == SignConvention::higher_is_better ? -1.0 : 1.0;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        panel.period_labels.push_back(row[0]);
        for (std::size_t c = 1; c < row.size(); ++c)
            panel.losses.push_back(
                sign * detail::parse_number(row[c], csv.line_numbers[r], csv.header[c]));
    }
    detail::check_periods_unique(panel.period_labels, path);
    panel.benchmark_index = panel.index_of(manifest.benchmark_id);
    if (!panel.benchmark_index)
        throw ValidationError(path + ": benchmark '" + manifest.benchmark_id + "' not found");
    validate_panel(panel);
    return panel;
}

// ---------------------------------------------------------------------------
// Meta grids

// Long format: target,horizon,design,model,value with an optional metric
// column for multi-metric files.
inline MetaGrid load_meta_grid(const std::string& path, const DatasetManifest& manifest) {
    if (manifest.input_kind != InputKind::meta_grid)
        throw ValidationError(path + ": manifest input_kind is not 'meta_grid'");
    const CsvTable csv = read_csv(path);
    if (csv.rows.empty()) throw ValidationError(path + ": no data rows");

    std::map<std::string, std::size_t> columns;
    for (std::size_t c = 0; c < csv.header.size(); ++c) columns[csv.header[c]] = c;
    for (const char* required : {"target", "horizon", "design", "model", "value"})
        if (!columns.count(required))
            throw ValidationError(path + ": missing column '" + std::string(required) + "'");

    MetaGrid grid;
    grid.benchmark_model = manifest.benchmark_id;
    const double sign = manifest.sign_convention == SignConvention::higher_is_better ? -1.0 : 1.0;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        MetaCell cell;
        cell.target = row[columns.at("target")];
        cell.horizon = row[columns.at("horizon")];
        cell.design = row[columns.at("design")];
        cell.model = row[columns.at("model")];
        cell.metric = columns.count("metric") ? row[columns.at("metric")] : "value";
        cell.value = sign * detail::parse_number(row[columns.at("value")], csv.line_numbers[r],
                                                 "value");
        cell.line = csv.line_numbers[r];
        grid.cells.push_back(std::move(cell));
    }
    validate_grid(grid);
    return grid;
}

// ---------------------------------------------------------------------------
// Simulation requests

struct SimRequest {
    SimConfig config;
    std::string task = "null_edge";  // or "dm_penalty"
};

inline SimRequest load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open simulation config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("simulation config '" + path + "': " + e.what());
    }
    SimRequest req;
    SimConfig& c = req.config;
    try {
        req.task = j.value("task", std::string("null_edge"));
        c.pool_size = j.value("pool_size", c.pool_size);
        c.periods = j.value("periods", c.periods);
        c.replications = j.value("replications", c.replications);
        if (j.contains("loss_law"))
            c.loss_law = loss_law_from_string(j.at("loss_law").get<std::string>());
        c.student_df = j.value("student_df", c.student_df);
        c.ar1_coefficient = j.value("ar1_coefficient", c.ar1_coefficient);
        c.drift = j.value("drift", c.drift);
        c.seed = j.value("seed", c.seed);
        if (j.contains("band")) {
            const auto& band = j.at("band");
            if (!band.is_array() || band.size() != 2)
                throw ValidationError("simulation config: band must be [lo, hi]");
            c.band_lo = band[0].get<double>();
            c.band_hi = band[1].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("simulation config '" + path + "': " + e.what());
    }
    if (req.task != "null_edge" && req.task != "dm_penalty")
        throw ValidationError("simulation config: unknown task '" + req.task + "'");
    validate_sim_config(c);
    return req;
}

}  // namespace riskcast
