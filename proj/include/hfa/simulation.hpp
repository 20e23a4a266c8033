#pragma once

#include <cstdint>
#include <vector>

#include "hfa/inference.hpp"
#include "hfa/rng.hpp"

namespace hfa {

struct SimulationConfig {
    int scenario = 1;          // 1: i.i.d. pair abilities, 2: per-team abilities
    int n = 20;                // team count, any n >= 3
    double sigma0_sq = 1.0;    // match-noise variance (per ordered fixture)
    int replicates = 1000;
    uint64_t seed = 0;
    double delta_true = 1.0;   // league effect
    double sigma_true = 0.3;   // spread of team effects around delta_true
    double alpha_scale = 2.0;  // ability scale (SD) in both scenarios
    double level = 0.05;       // CI level alpha
    VarianceMode variance_mode = VarianceMode::Total;
};

// Antisymmetric ability table, scenario 1: alpha_ij ~ N(0, scale^2)
// independently for i < j, mirrored with opposite sign.
std::vector<std::vector<double>> gen_alphas_scenario1(int n, double alpha_scale,
                                                      Stream& rng);

// Scenario 2: per-team abilities Ab_i ~ N(0, scale^2), alpha_ij = Ab_i - Ab_j.
std::vector<std::vector<double>> gen_alphas_scenario2(int n, double alpha_scale,
                                                      Stream& rng);

struct ReplicateResult {
    double delta_hat = 0.0;
    double sigma2_raw = 0.0;
    double sigma2_clamped = 0.0;
    double sigma2_beta_hat = 0.0;
    double var_delta_ci = 0.0;   // clamped sigma2, used for the interval
    double var_delta_raw = 0.0;  // raw sigma2, aggregated into MV
    bool ci_covers_delta = false;
    std::vector<double> beta_true;
    std::vector<double> beta_hat;
    std::vector<double> team_p;
    std::vector<char> team_covered;  // CI_i contains the realized beta_i
};

// One full synthetic season: draw effects and noise, generate every
// ordered fixture, run pairing + estimation + inference. Deterministic
// in (config, replicate_index).
ReplicateResult run_replicate(const SimulationConfig& config, int replicate_index);

struct EstimandMetrics {
    double bias = 0.0;
    double cp = 0.0;
    double sv = 0.0;
    double mv = 0.0;
};

struct MetricsSummary {
    int scenario = 0;
    int n = 0;
    double sigma0_sq = 0.0;
    int replicates = 0;
    EstimandMetrics delta;
    // Per-team metrics are against the replicate's realized beta_i, so the
    // point values entering bias/SV are the estimation errors.
    std::vector<EstimandMetrics> teams;
    int negative_sigma2_count = 0;
    double mean_sigma2_beta = 0.0;
};

// Bias / CP / SV / MV over collected replicates. SV needs >= 2 replicates.
// MV aggregates the raw (unclamped) variance estimates so the
// unbiasedness of sigma2_hat stays checkable; CP uses the clamped CI.
MetricsSummary aggregate(const std::vector<ReplicateResult>& results,
                         const SimulationConfig& config);

// Runs all replicates of one cell (parallel, deterministic) and aggregates.
MetricsSummary run_cell(const SimulationConfig& config);

// The 2 x {10,20,40,80} x {0.5,1,2} grid, every cell with the same base
// config (replicates, seed, level, mode). Cells run in parallel; rows are
// returned in grid order (scenario, n, sigma0_sq).
std::vector<MetricsSummary> run_table2_grid(const SimulationConfig& base);

}  // namespace hfa
