// Command-line front end: evaluate | meta | plotdata | simulate.
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riskcast/riskcast.hpp"

namespace {

std::vector<std::string> split_models(const std::string& csv) {
    std::vector<std::string> out;
    if (csv.empty() || csv == "all") return out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw riskcast::IoError("cannot write '" + output_path + "'");
    out << text;
    if (!out) throw riskcast::IoError("write to '" + output_path + "' failed");
}

struct CommonFlags {
    std::string input;
    std::string manifest;
    std::string benchmark;
    std::string models = "all";
    std::string window_start, window_end;
    std::string hac_kernel = "bartlett";
    std::string hac_lag = "auto";
    std::string output;
    std::string format = "json";
    bool no_highlights = false;
};

void add_io_flags(CLI::App* cmd, CommonFlags& flags, bool with_manifest = true) {
    cmd->add_option("--input", flags.input, "Input data file")->required();
    if (with_manifest)
        cmd->add_option("--manifest", flags.manifest, "Dataset manifest (JSON)")->required();
    cmd->add_option("--output", flags.output, "Output file (default: stdout)");
}

void add_eval_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--benchmark", flags.benchmark, "Benchmark model (default: manifest's)");
    cmd->add_option("--models", flags.models, "Comma-separated model list, or 'all'");
    cmd->add_option("--window-start", flags.window_start, "First period label of the window");
    cmd->add_option("--window-end", flags.window_end, "Last period label of the window");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace riskcast;

    CLI::App app{"Risk-adjusted forecast evaluation: loss differentials treated as returns"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML file (flags override)");
    app.fallthrough();

    CommonFlags eval_flags;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Per-period risk-adjusted evaluation of a loss or forecast panel");
    add_io_flags(evaluate, eval_flags);
    add_eval_flags(evaluate, eval_flags);
    evaluate->add_option("--hac-kernel", eval_flags.hac_kernel,
                         "HAC kernel: bartlett | truncated_uniform");
    evaluate->add_option("--hac-lag", eval_flags.hac_lag, "HAC lag: nonnegative integer or 'auto'");
    evaluate->add_option("--format", eval_flags.format, "Output format: json | csv | markdown");
    evaluate->add_flag("--no-highlights", eval_flags.no_highlights,
                       "Skip best/second-best flags in table output");

    CommonFlags meta_flags;
    CLI::App* meta = app.add_subcommand(
        "meta", "Cross-sectional meta evaluation of a performance grid");
    add_io_flags(meta, meta_flags);
    meta->add_option("--benchmark", meta_flags.benchmark, "Benchmark model (default: manifest's)");
    meta->add_option("--models", meta_flags.models, "Comma-separated model list, or 'all'");
    std::string normalization = "ratio_percent";
    meta->add_option("--normalization", normalization,
                     "ratio_percent (needs positive benchmark values) | raw_difference");
    meta->add_option("--format", meta_flags.format, "Output format: json | csv | markdown");
    meta->add_flag("--no-highlights", meta_flags.no_highlights,
                   "Skip best/second-best flags in table output");

    CommonFlags plot_flags;
    CLI::App* plotdata = app.add_subcommand(
        "plotdata", "Cumulative-gain and drawdown paths per model (CSV)");
    add_io_flags(plotdata, plot_flags);
    add_eval_flags(plotdata, plot_flags);

    CommonFlags sim_flags;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo checks: edge null calibration, DM autocorrelation penalty");
    add_io_flags(simulate, sim_flags, /*with_manifest=*/false);
    std::uint64_t seed = 0;
    bool seed_given = false;
    simulate->add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string&) { seed_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (evaluate->parsed()) {
            const DatasetManifest manifest = load_manifest(eval_flags.manifest);
            const EvaluationInput input = load_evaluation_input(eval_flags.input, manifest);
            EvaluateOptions opts;
            opts.benchmark = eval_flags.benchmark;
            opts.models = split_models(eval_flags.models);
            opts.window_start = eval_flags.window_start;
            opts.window_end = eval_flags.window_end;
            opts.highlights = !eval_flags.no_highlights;
            opts.hac = make_hac_config(eval_flags.hac_kernel, eval_flags.hac_lag, manifest.horizon);
            const EvaluationReport report = build_evaluation_report(input, opts);
            std::ostringstream buf;
            write_report(report, buf, report_format_from_string(eval_flags.format));
            emit(buf.str(), eval_flags.output);
        } else if (meta->parsed()) {
            const DatasetManifest manifest = load_manifest(meta_flags.manifest);
            MetaGrid grid = load_meta_grid(meta_flags.input, manifest);
            if (!meta_flags.benchmark.empty()) {
                grid.benchmark_model = meta_flags.benchmark;
                validate_grid(grid);
            }
            MetaOptions opts;
            if (normalization == "ratio_percent" || normalization == "ratio")
                opts.normalization = MetaNormalization::ratio_percent;
            else if (normalization == "raw_difference" || normalization == "difference")
                opts.normalization = MetaNormalization::raw_difference;
            else
                throw ValidationError("unknown normalization '" + normalization + "'");
            opts.models = split_models(meta_flags.models);
            opts.highlights = !meta_flags.no_highlights;
            const MetaReport report = build_meta_report(grid, opts);
            std::ostringstream buf;
            write_report(report, buf, report_format_from_string(meta_flags.format));
            emit(buf.str(), meta_flags.output);
        } else if (plotdata->parsed()) {
            const DatasetManifest manifest = load_manifest(plot_flags.manifest);
            const EvaluationInput input = load_evaluation_input(plot_flags.input, manifest);
            EvaluateOptions opts;
            opts.benchmark = plot_flags.benchmark;
            opts.models = split_models(plot_flags.models);
            opts.window_start = plot_flags.window_start;
            opts.window_end = plot_flags.window_end;
            std::ostringstream buf;
            write_plot_data(build_plot_data(input, opts), buf);
            emit(buf.str(), plot_flags.output);
        } else if (simulate->parsed()) {
            SimRequest request = load_sim_config(sim_flags.input);
            if (seed_given) request.config.seed = seed;
            nlohmann::ordered_json summary;
            if (request.task == "null_edge")
                summary = to_json(request.config, simulate_null_edge(request.config));
            else
                summary = to_json(request.config, simulate_dm_penalty(request.config));
            std::ostringstream buf;
            write_structured(summary, buf);
            emit(buf.str(), sim_flags.output);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
