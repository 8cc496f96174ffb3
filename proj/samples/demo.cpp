// Minimal end-to-end walkthrough: build a two-model loss panel in memory,
// compute per-model risk metrics, and print the markdown report.

#include <iostream>

#include "riskcast/riskcast.hpp"

int main() {
    using namespace riskcast;

    // Quarterly squared-error losses for a benchmark and two challengers.
    LossPanel panel;
    panel.model_ids = {"AR", "ridge", "forest"};
    panel.period_labels = {"2020Q1", "2020Q2", "2020Q3", "2020Q4", "2021Q1", "2021Q2"};
    panel.rule = ScoringRule::squared_error;
    panel.losses = {
        4.0, 2.0, 3.5,  //
        1.0, 2.0, 0.5,  //
        4.0, 2.0, 3.0,  //
        3.0, 2.0, 2.5,  //
        2.0, 1.5, 2.5,  //
        5.0, 3.0, 2.0,  //
    };
    panel.benchmark_index = 0;

    EvaluationInput input;
    input.manifest.input_kind = InputKind::losses;
    input.manifest.scoring_rule = ScoringRule::squared_error;
    input.manifest.benchmark_id = "AR";
    input.panels.push_back(panel);

    EvaluateOptions opts;
    opts.hac = make_hac_config("bartlett", "auto", std::nullopt);
    const EvaluationReport report = build_evaluation_report(input, opts);
    write_report(report, std::cout, ReportFormat::markdown);

    // The same gains as a raw series, for direct metric access.
    const ReturnSeries gains = return_series(panel.series(0), panel.series(1));
    std::cout << "ridge sharpe: " << format_table_value(sharpe_ratio(gains)) << "\n";
    std::cout << "ridge omega:  " << format_table_value(omega_ratio(gains)) << "\n";
    return 0;
}
