// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.
//
// Usage: acceptance <path-to-cli> <fixtures-dir> [work-dir]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "riskcast/riskcast.hpp"

namespace fs = std::filesystem;
using namespace riskcast;

namespace {

std::string g_cli;
fs::path g_fixtures;
fs::path g_work;
int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int number, const std::string& name, bool ok, const std::string& detail,
            double seconds) {
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << number << "] " << name;
    if (!detail.empty()) std::cout << " -- " << detail;
    char buf[32];
    std::snprintf(buf, sizeof(buf), " (%.2fs)", seconds);
    std::cout << buf << "\n";
    if (!ok) ++g_failures;
}

int run_cli(const std::string& args) {
    const std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool close_to(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Sentinel-aware comparison at tolerance eps * max(1, |b|).
bool same_metric(double a, double b, double eps) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::fabs(a - b) <= eps * std::max(1.0, std::fabs(b));
}

std::vector<double> random_series(std::mt19937_64& gen, std::size_t min_len,
                                  std::size_t max_len) {
    const std::size_t T = min_len + gen() % (max_len - min_len + 1);
    std::vector<double> out(T);
    for (double& x : out)
        x = -3.0 + 6.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    return out;
}

// [1] Table-derived meta fixture reproduces the printed Sharpe column.
void criterion_1() {
    Timer timer;
    const fs::path out = g_work / "c1_meta.json";
    const int rc = run_cli("meta --input \"" + (g_fixtures / "table2_grid.csv").string() +
                           "\" --manifest \"" + (g_fixtures / "table2_grid.manifest.json").string() +
                           "\" --format json --output \"" + out.string() + "\"");
    bool ok = rc == 0;
    std::string detail;
    if (ok) {
        const std::map<std::string, double> expected = {{"HNN", 0.85},   {"BART", 0.97},
                                                        {"DeepAR", 0.38}, {"BLR", 0.38},
                                                        {"NN_G", -0.08},  {"NN_SV", -0.08}};
        const MetaReport parsed = read_meta_report(out.string());
        std::size_t matched = 0;
        for (const MetaSection& section : parsed.sections)
            for (const MetaRow& row : section.rows) {
                const auto it = expected.find(row.model);
                if (it == expected.end()) continue;
                if (close_to(row.sharpe, it->second, 0.01)) {
                    ++matched;
                } else {
                    ok = false;
                    detail += row.model + " sharpe " + std::to_string(row.sharpe) + " ";
                }
            }
        ok = ok && matched == expected.size();
        if (detail.empty()) detail = "6/6 models within 0.01";
    } else {
        detail = "cli exit code " + std::to_string(rc);
    }
    const double secs = timer.seconds();
    ok = ok && secs < 1.0;
    report(1, "meta sharpe column vs published table", ok, detail, secs);
}

// [2] Percentage meta return of a 0.90 ratio is exactly 10.
void criterion_2() {
    Timer timer;
    MetaGrid grid;
    grid.benchmark_model = "B";
    grid.cells = {MetaCell{"c", "h", "d", "B", "RMSE", 1.0, 0},
                  MetaCell{"c", "h", "d", "M", "RMSE", 0.90, 0}};
    const MetaReturns r = meta_returns(grid, "M", MetaNormalization::ratio_percent);
    const bool ok = r.returns.size() == 1 && r.returns[0] == 10.0;
    report(2, "ratio 0.90 is exactly a 10% return", ok,
           ok ? "exact" : "got " + std::to_string(r.returns[0]), timer.seconds());
}

// [3] DM at lag zero equals sqrt(T) times the population Sharpe.
void criterion_3() {
    Timer timer;
    std::mt19937_64 gen(1001);
    const HacConfig lag0{HacKernel::truncated_uniform, LagRule::fixed, 0, 1};
    bool ok = true;
    double worst = 0.0;
    for (int rep = 0; rep < 1000 && ok; ++rep) {
        const std::vector<double> r = random_series(gen, 5, 200);
        const double dm = dm_statistic(r, lag0);
        const double identity = std::sqrt(static_cast<double>(r.size())) *
                                sharpe_ratio(r, VarianceConvention::population_T);
        const double err =
            std::fabs(dm - identity) / std::max(1.0, std::fabs(identity));
        worst = std::max(worst, err);
        ok = err <= 1e-12;
    }
    const double secs = timer.seconds();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max rel err %.2e over 1000 series", worst);
    report(3, "DM-Sharpe identity at lag zero", ok && secs < 5.0, buf, secs);
}

// [4] Bartlett long-run variance penalizes positive persistence.
void criterion_4() {
    Timer timer;
    SimConfig cfg;
    cfg.periods = 400;
    cfg.replications = 500;
    cfg.ar1_coefficient = 0.5;
    cfg.drift = 0.2;
    cfg.seed = 8101;
    const DmPenaltyResult hot = simulate_dm_penalty(cfg);
    const bool penalty = hot.mean_abs_bartlett < hot.mean_abs_k0;

    cfg.ar1_coefficient = 0.0;
    cfg.drift = 0.05;
    const DmPenaltyResult flat = simulate_dm_penalty(cfg);
    const double gap = std::fabs(flat.mean_k0 - flat.mean_bartlett);
    const bool agreement = gap <= 0.05;

    const double secs = timer.seconds();
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "|DM| %.3f -> %.3f under ar1=0.5; ar1=0 gap %.3f", hot.mean_abs_k0,
                  hot.mean_abs_bartlett, gap);
    report(4, "autocorrelation penalty on DM", penalty && agreement && secs < 30.0, buf, secs);
}

// [5] Edge null calibration with K = 10 iid exponential columns.
void criterion_5() {
    Timer timer;
    const SimRequest req = load_sim_config((g_fixtures / "sim_null_edge.json").string());
    const NullEdgeResult result = simulate_null_edge(req.config);
    const bool in_band =
        result.mean_edge >= req.config.band_lo && result.mean_edge <= req.config.band_hi;

    const double n = static_cast<double>(req.config.periods * req.config.replications);
    const double p = 1.0 / static_cast<double>(req.config.pool_size);
    const double band = 3.0 * std::sqrt(p * (1.0 - p) / n);
    bool frequencies_ok = true;
    for (double f : result.win_frequency)
        frequencies_ok = frequencies_ok && close_to(f, p, band);

    const double secs = timer.seconds();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "mean edge %.4f vs band [%.2f, %.2f]; win freq within 3se: %s",
                  result.mean_edge, req.config.band_lo, req.config.band_hi,
                  frequencies_ok ? "yes" : "no");
    report(5, "edge null calibration (K=10, exponential)",
           in_band && frequencies_ok && secs < 60.0, buf, secs);
}

// [6] A perpetual runner-up scores exactly zero.
void criterion_6() {
    Timer timer;
    LossPanel panel;
    panel.model_ids = {"second", "best", "third"};
    panel.rule = ScoringRule::external;
    for (int t = 0; t < 12; ++t) {
        panel.losses.push_back(2.0 + 0.1 * t);  // always second
        panel.losses.push_back(1.0 + 0.1 * t);  // always best
        panel.losses.push_back(3.0 + 0.1 * t);
    }
    const double edge = edge_ratio(panel, 0);
    const bool ok = edge == 0.0;
    report(6, "strictly-second model has edge ratio exactly zero", ok,
           ok ? "exact zero" : "got " + std::to_string(edge), timer.seconds());
}

// [7] Drawdown equals the brute-force peak-trough maximum.
void criterion_7() {
    Timer timer;
    std::mt19937_64 gen(2002);
    bool ok = true;
    for (int rep = 0; rep < 10000 && ok; ++rep) {
        const std::vector<double> r = random_series(gen, 1, 50);
        ok = std::fabs(drawdown(r).max_drawdown - oracle::max_drawdown_bruteforce(r)) <= 1e-12;
    }
    const double secs = timer.seconds();
    report(7, "drawdown vs brute-force oracle (10000 series)", ok && secs < 10.0, "", secs);
}

// [8] Ratio battery vs an independent reimplementation, plus invariances.
void criterion_8() {
    Timer timer;
    std::mt19937_64 gen(3003);
    bool ok = true;
    for (int rep = 0; rep < 10000 && ok; ++rep) {
        const std::vector<double> r = random_series(gen, 2, 60);
        const double c = 0.1 + 9.9 * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
        std::vector<double> scaled = r, flipped = r;
        for (double& x : scaled) x *= c;
        for (double& x : flipped) x = -x;

        ok = ok && same_metric(sharpe_ratio(r), oracle::sharpe_sample(r), 1e-12);
        ok = ok && same_metric(sortino_ratio(r), oracle::sortino(r), 1e-12);
        ok = ok && same_metric(omega_ratio(r), oracle::omega(r), 1e-12);
        ok = ok && same_metric(sharpe_ratio(scaled), sharpe_ratio(r), 1e-12);
        ok = ok && same_metric(sortino_ratio(scaled), sortino_ratio(r), 1e-12);
        ok = ok && same_metric(omega_ratio(scaled), omega_ratio(r), 1e-12);
        const double om = omega_ratio(r);
        if (std::isfinite(om) && om > 0.0)
            ok = ok && same_metric(omega_ratio(flipped), 1.0 / om, 1e-12);
    }
    const double secs = timer.seconds();
    report(8, "ratio battery vs independent oracle (10000 series)", ok && secs < 10.0, "", secs);
}

// [9] Hand-worked CLI report row at printed precision.
void criterion_9() {
    Timer timer;
    const fs::path out = g_work / "c9_eval.csv";
    const int rc = run_cli("evaluate --input \"" + (g_fixtures / "toy_panel_losses.csv").string() +
                           "\" --manifest \"" + (g_fixtures / "toy_panel.manifest.json").string() +
                           "\" --hac-lag 0 --format csv --output \"" + out.string() + "\"");
    bool ok = rc == 0;
    std::string detail = ok ? "" : "cli exit code " + std::to_string(rc);
    if (ok) {
        const std::string text = slurp(out);
        for (const char* needle :
             {"A,return,m,1.00,", "A,sharpe,m,0.71,", "A,sortino,m,2.00,", "A,omega,m,5.00,",
              "A,max_drawdown,m,-1.00,"}) {
            if (text.find(needle) == std::string::npos) {
                ok = false;
                detail += std::string("missing '") + needle + "' ";
            }
        }
        if (ok) detail = "all five printed values exact";
    }
    report(9, "hand-worked report row at printed precision", ok, detail, timer.seconds());
}

// [10] Byte-identical outputs for every subcommand.
void criterion_10() {
    Timer timer;
    bool ok = true;
    std::string detail;

    const auto twice = [&](const std::string& name, const std::string& args_prefix) {
        const fs::path a = g_work / ("c10_" + name + "_a.out");
        const fs::path b = g_work / ("c10_" + name + "_b.out");
        int rc = run_cli(args_prefix + " --output \"" + a.string() + "\"");
        rc |= run_cli(args_prefix + " --output \"" + b.string() + "\"");
        const bool same = rc == 0 && slurp(a) == slurp(b) && !slurp(a).empty();
        if (!same) {
            ok = false;
            detail += name + " differs ";
        }
    };

    twice("evaluate", "evaluate --input \"" + (g_fixtures / "toy_panel_losses.csv").string() +
                          "\" --manifest \"" + (g_fixtures / "toy_panel.manifest.json").string() +
                          "\" --format json");
    twice("meta", "meta --input \"" + (g_fixtures / "table2_grid.csv").string() +
                      "\" --manifest \"" + (g_fixtures / "table2_grid.manifest.json").string() +
                      "\" --format json");
    twice("plotdata", "plotdata --input \"" + (g_fixtures / "toy_panel_losses.csv").string() +
                          "\" --manifest \"" + (g_fixtures / "toy_panel.manifest.json").string() +
                          "\"");
    twice("simulate", "simulate --input \"" + (g_fixtures / "sim_small.json").string() +
                          "\" --seed 99");
    if (ok) detail = "evaluate, meta, plotdata, simulate";
    report(10, "byte-identical reruns of every subcommand", ok, detail, timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli-binary> <fixtures-dir> [work-dir]\n";
        return 2;
    }
    g_cli = argv[1];
    g_fixtures = argv[2];
    g_work = argc > 3 ? fs::path(argv[3]) : fs::path("acceptance_work");
    fs::create_directories(g_work);

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    std::cout << (10 - g_failures) << "/10 criteria passed\n";
    return g_failures == 0 ? 0 : 1;
}
