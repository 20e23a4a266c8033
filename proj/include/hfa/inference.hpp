#pragma once

#include <string>
#include <vector>

#include "hfa/estimator.hpp"

namespace hfa {

// Variance for the league-level confidence interval. Literal is the
// plain sigma2/n; Total adds the sampling noise of the league mean,
// sigma2_beta / (n(2n-2)), and is the default because the reproduced
// simulation table is only consistent with that form.
enum class VarianceMode { Literal, Total };

VarianceMode parse_variance_mode(const std::string& name);
const char* variance_mode_name(VarianceMode mode);

struct PValueResult {
    double p = 1.0;
    bool degenerate = false;  // variance was exactly zero
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

// League-level inference for one statistic.
struct LeagueInference {
    double delta_hat = 0.0;
    double sigma2_raw = 0.0;      // can be negative in finite samples
    double sigma2_clamped = 0.0;  // max(raw, 0), used for CI / p-value
    bool clamped = false;
    double var_delta = 0.0;       // CI variance under the selected mode
    Interval ci;
    double p_value = 1.0;
    bool degenerate = false;
};

struct TeamEffect {
    int team = 0;
    double beta_hat = 0.0;
    double se = 0.0;
    Interval ci;
    double p_value = 1.0;
};

// Mean of the per-team effects. Errors on an empty vector.
double delta_hat(const std::vector<double>& beta_hat);

struct Sigma2Estimate {
    double raw = 0.0;
    double clamped = 0.0;
};

// Law-of-total-variance estimator of the across-team effect variance:
// sampleVariance(beta_hat, n-1) - mean(cov_diag), clamped at zero for
// interval construction. Requires n >= 2.
Sigma2Estimate sigma2_hat(const std::vector<double>& beta_hat,
                          const std::vector<double>& cov_diag);

// CI variance for delta_hat under the selected mode. `sigma2` is the
// clamped estimate for intervals; simulation aggregates pass the raw one.
double var_delta_hat(double sigma2, double sigma2_beta_hat, int n, VarianceMode mode);

// point +/- z_{alpha/2} * sqrt(variance). Requires variance >= 0 and
// alpha in (0, 1).
Interval confidence_interval(double point, double variance, double alpha);

// Two-sided normal test of point = 0. Zero variance degenerates to
// p = 0 (point != 0) or p = 1 (point == 0) with the flag set.
PValueResult z_test(double point, double variance);

// Full league-level inference from fitted effects.
LeagueInference league_inference(const EffectEstimates& est, double alpha,
                                 VarianceMode mode);

// Per-team intervals and tests of beta_i = 0.
std::vector<TeamEffect> team_inference(const EffectEstimates& est, double alpha);

}  // namespace hfa
