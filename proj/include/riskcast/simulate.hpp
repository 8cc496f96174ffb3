#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "riskcast/edge.hpp"
#include "riskcast/hac.hpp"
#include "riskcast/rng.hpp"

namespace riskcast {

enum class LossLaw { gaussian_abs, exponential, student_t_abs };

inline const char* to_string(LossLaw law) {
    switch (law) {
        case LossLaw::gaussian_abs: return "gaussian_abs";
        case LossLaw::exponential: return "exponential";
        case LossLaw::student_t_abs: return "student_t_abs";
    }
    return "exponential";
}

inline LossLaw loss_law_from_string(const std::string& s) {
    if (s == "gaussian_abs") return LossLaw::gaussian_abs;
    if (s == "exponential") return LossLaw::exponential;
    if (s == "student_t_abs") return LossLaw::student_t_abs;
    throw ValidationError("unknown loss law: '" + s + "'");
}

struct SimConfig {
    std::size_t pool_size = 10;
    std::size_t periods = 10000;
    std::size_t replications = 200;
    LossLaw loss_law = LossLaw::exponential;  // positive and skewed, like squared-error gaps
    double student_df = 4.0;                  // used by student_t_abs only
    double ar1_coefficient = 0.0;
    double drift = 0.0;  // mean of the simulated loss differential
    std::uint64_t seed = 1;
    // Calibration band for the null-edge verdict; configuration, not a
    // library constant.
    double band_lo = 0.8;
    double band_hi = 1.2;
};

inline void validate_sim_config(const SimConfig& cfg) {
    if (cfg.pool_size < 2)
        throw ValidationError("pool_size must be at least 2, got " +
                              std::to_string(cfg.pool_size));
    if (cfg.periods == 0) throw ValidationError("periods must be positive");
    if (cfg.replications == 0) throw ValidationError("replications must be positive");
    if (cfg.loss_law == LossLaw::student_t_abs && !(cfg.student_df > 2.0))
        throw ValidationError("student_t_abs needs df > 2");
    if (!(cfg.ar1_coefficient > -1.0 && cfg.ar1_coefficient < 1.0))
        throw ValidationError("ar1_coefficient must lie in (-1, 1)");
    if (!(cfg.band_lo < cfg.band_hi)) throw ValidationError("empty calibration band");
}

inline double draw_loss(Rng& rng, LossLaw law, double df) {
    switch (law) {
        case LossLaw::gaussian_abs: return std::fabs(rng.normal());
        case LossLaw::exponential: return rng.exponential();
        case LossLaw::student_t_abs: return std::fabs(rng.student_t(df));
    }
    return rng.exponential();
}

struct NullEdgeResult {
    double mean_edge = 0.0;
    std::vector<double> per_replication;  // edge ratio of model 0, size R
    std::vector<double> win_frequency;    // strict frontier-win share per model, size K
    bool within_band = false;
};

// Null calibration of the edge ratio: K exchangeable i.i.d. loss columns per
// replication, edge ratio evaluated for model 0. With no unique advantage
// the scaled ratio should hover near one.
inline LossPanel draw_null_panel(const SimConfig& cfg, Rng& rng) {
    LossPanel panel;
    panel.rule = ScoringRule::external;
    panel.model_ids.reserve(cfg.pool_size);
    for (std::size_t k = 0; k < cfg.pool_size; ++k)
        panel.model_ids.push_back("model" + std::to_string(k + 1));
    panel.losses.resize(cfg.periods * cfg.pool_size);
    for (double& x : panel.losses) x = draw_loss(rng, cfg.loss_law, cfg.student_df);
    return panel;
}

inline NullEdgeResult simulate_null_edge(const SimConfig& cfg) {
    validate_sim_config(cfg);
    NullEdgeResult out;
    out.per_replication.reserve(cfg.replications);
    std::vector<std::size_t> wins(cfg.pool_size, 0);
    std::size_t decided_periods = 0;

    for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
        Rng rng(derive_seed(cfg.seed, rep));
        const LossPanel panel = draw_null_panel(cfg, rng);
        out.per_replication.push_back(edge_ratio(panel, 0));

        for (std::size_t t = 0; t < cfg.periods; ++t) {
            std::size_t argmin = 0;
            bool tie = false;
            for (std::size_t k = 1; k < cfg.pool_size; ++k) {
                if (panel.loss(t, k) < panel.loss(t, argmin)) {
                    argmin = k;
                    tie = false;
                } else if (panel.loss(t, k) == panel.loss(t, argmin)) {
                    tie = true;
                }
            }
            if (!tie) {  // strict winners only; ties are measure zero here
                ++wins[argmin];
                ++decided_periods;
            }
        }
    }

    out.mean_edge = mean(out.per_replication);
    out.win_frequency.resize(cfg.pool_size, 0.0);
    if (decided_periods > 0)
        for (std::size_t k = 0; k < cfg.pool_size; ++k)
            out.win_frequency[k] =
                static_cast<double>(wins[k]) / static_cast<double>(decided_periods);
    out.within_band = out.mean_edge >= cfg.band_lo && out.mean_edge <= cfg.band_hi;
    return out;
}

struct DmPenaltyResult {
    std::vector<double> dm_k0;        // DM with K = 0, one per replication
    std::vector<double> dm_bartlett;  // DM with Bartlett kernel, rule-of-thumb lag
    double mean_k0 = 0.0;
    double mean_bartlett = 0.0;
    double mean_abs_k0 = 0.0;
    double mean_abs_bartlett = 0.0;
};

// Autocorrelation penalty on the DM statistic: AR(1) loss differentials with
// standard-normal innovations, stationary start, paired DM at lag 0 and at
// the Bartlett rule-of-thumb lag.
inline DmPenaltyResult simulate_dm_penalty(const SimConfig& cfg) {
    validate_sim_config(cfg);
    DmPenaltyResult out;
    out.dm_k0.reserve(cfg.replications);
    out.dm_bartlett.reserve(cfg.replications);

    const HacConfig k0{HacKernel::truncated_uniform, LagRule::fixed, 0, 1};
    const HacConfig bartlett{HacKernel::bartlett, LagRule::rule_of_thumb, 0, 1};
    const double rho = cfg.ar1_coefficient;
    const double stationary_sd = 1.0 / std::sqrt(1.0 - rho * rho);

    std::vector<double> series(cfg.periods);
    for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
        Rng rng(derive_seed(cfg.seed, rep));
        double deviation = stationary_sd * rng.normal();
        for (std::size_t t = 0; t < cfg.periods; ++t) {
            series[t] = cfg.drift + deviation;
            deviation = rho * deviation + rng.normal();
        }
        out.dm_k0.push_back(dm_statistic(series, k0));
        out.dm_bartlett.push_back(dm_statistic(series, bartlett));
    }

    out.mean_k0 = mean(out.dm_k0);
    out.mean_bartlett = mean(out.dm_bartlett);
    double abs0 = 0.0, absb = 0.0;
    for (double x : out.dm_k0) abs0 += std::fabs(x);
    for (double x : out.dm_bartlett) absb += std::fabs(x);
    out.mean_abs_k0 = abs0 / static_cast<double>(out.dm_k0.size());
    out.mean_abs_bartlett = absb / static_cast<double>(out.dm_bartlett.size());
    return out;
}

}  // namespace riskcast
