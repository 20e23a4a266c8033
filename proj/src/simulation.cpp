#include "hfa/simulation.hpp"

#include <cmath>
#include <future>
#include <thread>

#include "hfa/errors.hpp"
#include "hfa/estimator.hpp"
#include "hfa/league_data.hpp"
#include "hfa/normal.hpp"

namespace hfa {

namespace {

void validate(const SimulationConfig& c) {
    if (c.scenario != 1 && c.scenario != 2) {
        throw Error(ErrorKind::Argument, "scenario must be 1 or 2");
    }
    if (c.n < 3) {
        throw Error(ErrorKind::Argument, "team count must be >= 3");
    }
    if (!(c.sigma0_sq > 0.0)) {
        throw Error(ErrorKind::Argument, "sigma0_sq must be > 0");
    }
    if (c.replicates < 1) {
        throw Error(ErrorKind::Argument, "replicates must be >= 1");
    }
    if (c.sigma_true < 0.0) {
        throw Error(ErrorKind::Argument, "sigma_true must be >= 0");
    }
    if (!(c.level > 0.0) || !(c.level < 1.0)) {
        throw Error(ErrorKind::Argument, "level must lie in (0, 1)");
    }
}

double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) {
        throw Error(ErrorKind::Argument, "sample variance needs >= 2 replicates");
    }
    const double m = sample_mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

std::vector<std::vector<double>> gen_alphas_scenario1(int n, double alpha_scale,
                                                      Stream& rng) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double draw = alpha_scale * rng.next_normal();
            a[i][j] = draw;
            a[j][i] = -draw;
        }
    }
    return a;
}

std::vector<std::vector<double>> gen_alphas_scenario2(int n, double alpha_scale,
                                                      Stream& rng) {
    std::vector<double> ability(n);
    for (int i = 0; i < n; ++i) ability[i] = alpha_scale * rng.next_normal();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = ability[i] - ability[j];
    }
    return a;
}

ReplicateResult run_replicate(const SimulationConfig& config, int replicate_index) {
    validate(config);
    const int n = config.n;
    const uint64_t k = static_cast<uint64_t>(replicate_index);

    Stream beta_rng = substream(config.seed, k, StreamId::Beta);
    std::vector<double> beta(n);
    for (int i = 0; i < n; ++i) {
        beta[i] = config.delta_true + config.sigma_true * beta_rng.next_normal();
    }

    Stream alpha_rng = substream(config.seed, k, StreamId::Alpha);
    auto alphas = config.scenario == 1
                      ? gen_alphas_scenario1(n, config.alpha_scale, alpha_rng)
                      : gen_alphas_scenario2(n, config.alpha_scale, alpha_rng);

    Stream eps_rng = substream(config.seed, k, StreamId::Epsilon);
    const double noise_sd = std::sqrt(config.sigma0_sq);
    std::vector<std::vector<double>> net(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            net[i][j] = alphas[i][j] + beta[i] + noise_sd * eps_rng.next_normal();
        }
    }

    DesignSystem design = build_design(pair_net_table(n, net));
    EffectEstimates est = estimate_effects(design);
    LeagueInference league = league_inference(est, config.level, config.variance_mode);

    ReplicateResult rr;
    rr.delta_hat = league.delta_hat;
    rr.sigma2_raw = league.sigma2_raw;
    rr.sigma2_clamped = league.sigma2_clamped;
    rr.sigma2_beta_hat = est.sigma2_beta_hat;
    rr.var_delta_ci = league.var_delta;
    rr.var_delta_raw =
        var_delta_hat(league.sigma2_raw, est.sigma2_beta_hat, n, config.variance_mode);
    rr.ci_covers_delta =
        league.ci.lower <= config.delta_true && config.delta_true <= league.ci.upper;
    rr.beta_true = std::move(beta);
    rr.beta_hat = est.beta_hat;

    const double z = z_critical(config.level);
    rr.team_p.resize(n);
    rr.team_covered.resize(n);
    for (int i = 0; i < n; ++i) {
        const double se = std::sqrt(est.cov_diag[i]);
        const double half = z * se;
        rr.team_covered[i] = std::abs(rr.beta_hat[i] - rr.beta_true[i]) <= half;
        rr.team_p[i] = z_test(rr.beta_hat[i], est.cov_diag[i]).p;
    }
    return rr;
}

MetricsSummary aggregate(const std::vector<ReplicateResult>& results,
                         const SimulationConfig& config) {
    if (results.size() < 2) {
        throw Error(ErrorKind::Argument, "aggregate: need >= 2 replicates for SV");
    }
    const int n = config.n;
    const size_t reps = results.size();

    MetricsSummary out;
    out.scenario = config.scenario;
    out.n = n;
    out.sigma0_sq = config.sigma0_sq;
    out.replicates = static_cast<int>(reps);

    std::vector<double> deltas(reps), mvs(reps);
    double covers = 0.0;
    for (size_t r = 0; r < reps; ++r) {
        deltas[r] = results[r].delta_hat;
        mvs[r] = results[r].var_delta_raw;
        covers += results[r].ci_covers_delta ? 1.0 : 0.0;
        out.negative_sigma2_count += results[r].sigma2_raw < 0.0 ? 1 : 0;
        out.mean_sigma2_beta += results[r].sigma2_beta_hat;
    }
    out.mean_sigma2_beta /= static_cast<double>(reps);
    out.delta.bias = sample_mean(deltas) - config.delta_true;
    out.delta.cp = covers / static_cast<double>(reps);
    out.delta.sv = sample_variance(deltas);
    out.delta.mv = sample_mean(mvs);

    // Per-team sampling variance is constant across teams on a complete
    // design; MV_i is its mean over replicates.
    const double cov_factor = static_cast<double>(2 * n - 3) /
                              (static_cast<double>(n - 2) * (2 * n - 2));
    out.teams.resize(n);
    std::vector<double> errors(reps);
    for (int i = 0; i < n; ++i) {
        double team_covers = 0.0;
        double mv = 0.0;
        for (size_t r = 0; r < reps; ++r) {
            errors[r] = results[r].beta_hat[i] - results[r].beta_true[i];
            team_covers += results[r].team_covered[i] ? 1.0 : 0.0;
            mv += results[r].sigma2_beta_hat * cov_factor;
        }
        out.teams[i].bias = sample_mean(errors);
        out.teams[i].cp = team_covers / static_cast<double>(reps);
        out.teams[i].sv = sample_variance(errors);
        out.teams[i].mv = mv / static_cast<double>(reps);
    }
    return out;
}

MetricsSummary run_cell(const SimulationConfig& config) {
    validate(config);
    std::vector<ReplicateResult> results(config.replicates);

    const unsigned hw = std::thread::hardware_concurrency();
    const int workers =
        std::max(1, std::min<int>(hw ? static_cast<int>(hw) : 1, config.replicates));
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (int r = w; r < config.replicates; r += workers) {
                results[r] = run_replicate(config, r);
            }
        }));
    }
    for (auto& f : futures) f.get();
    return aggregate(results, config);
}

std::vector<MetricsSummary> run_table2_grid(const SimulationConfig& base) {
    static const int kTeams[] = {10, 20, 40, 80};
    static const double kSigma0[] = {0.5, 1.0, 2.0};

    std::vector<MetricsSummary> rows;
    for (int scenario : {1, 2}) {
        for (int n : kTeams) {
            for (double s0 : kSigma0) {
                SimulationConfig cell = base;
                cell.scenario = scenario;
                cell.n = n;
                cell.sigma0_sq = s0;
                rows.push_back(run_cell(cell));
            }
        }
    }
    return rows;
}

}  // namespace hfa
