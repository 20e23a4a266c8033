#include "hfa/inference.hpp"

#include <cmath>

#include "hfa/errors.hpp"
#include "hfa/normal.hpp"

namespace hfa {

VarianceMode parse_variance_mode(const std::string& name) {
    if (name == "literal") return VarianceMode::Literal;
    if (name == "total") return VarianceMode::Total;
    throw Error(ErrorKind::Argument,
                "unknown variance mode '" + name + "' (expected literal or total)");
}

const char* variance_mode_name(VarianceMode mode) {
    return mode == VarianceMode::Literal ? "literal" : "total";
}

double delta_hat(const std::vector<double>& beta_hat) {
    if (beta_hat.empty()) {
        throw Error(ErrorKind::Argument, "delta_hat: empty effect vector");
    }
    double s = 0.0;
    for (double b : beta_hat) s += b;
    return s / static_cast<double>(beta_hat.size());
}

Sigma2Estimate sigma2_hat(const std::vector<double>& beta_hat,
                          const std::vector<double>& cov_diag) {
    const size_t n = beta_hat.size();
    if (n < 2 || cov_diag.size() != n) {
        throw Error(ErrorKind::Argument,
                    "sigma2_hat: need matching vectors of length >= 2");
    }
    const double mean = delta_hat(beta_hat);
    double ss = 0.0;
    for (double b : beta_hat) ss += (b - mean) * (b - mean);
    double mean_var = 0.0;
    for (double v : cov_diag) mean_var += v;
    mean_var /= static_cast<double>(n);

    Sigma2Estimate out;
    out.raw = ss / static_cast<double>(n - 1) - mean_var;
    out.clamped = out.raw > 0.0 ? out.raw : 0.0;
    return out;
}

double var_delta_hat(double sigma2, double sigma2_beta_hat, int n, VarianceMode mode) {
    double v = sigma2 / static_cast<double>(n);
    if (mode == VarianceMode::Total) {
        // League-mean sampling noise: 1' Sigma_beta 1 / n^2 with
        // 1' (H'H)^{-1} 1 = n / (2n-2).
        v += sigma2_beta_hat / (static_cast<double>(n) * (2 * n - 2));
    }
    return v;
}

Interval confidence_interval(double point, double variance, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw Error(ErrorKind::Argument, "confidence_interval: alpha must lie in (0, 1)");
    }
    if (variance < 0.0) {
        throw Error(ErrorKind::Argument, "confidence_interval: negative variance");
    }
    const double half = z_critical(alpha) * std::sqrt(variance);
    return Interval{point - half, point + half};
}

PValueResult z_test(double point, double variance) {
    if (variance < 0.0) {
        throw Error(ErrorKind::Argument, "z_test: negative variance");
    }
    if (variance == 0.0) {
        return PValueResult{point == 0.0 ? 1.0 : 0.0, true};
    }
    const double z = std::abs(point) / std::sqrt(variance);
    return PValueResult{2.0 * (1.0 - normal_cdf(z)), false};
}

LeagueInference league_inference(const EffectEstimates& est, double alpha,
                                 VarianceMode mode) {
    const int n = static_cast<int>(est.beta_hat.size());
    LeagueInference out;
    out.delta_hat = delta_hat(est.beta_hat);
    Sigma2Estimate s2 = sigma2_hat(est.beta_hat, est.cov_diag);
    out.sigma2_raw = s2.raw;
    out.sigma2_clamped = s2.clamped;
    out.clamped = s2.raw < 0.0;
    out.var_delta = var_delta_hat(s2.clamped, est.sigma2_beta_hat, n, mode);
    out.ci = confidence_interval(out.delta_hat, out.var_delta, alpha);
    PValueResult p = z_test(out.delta_hat, out.var_delta);
    out.p_value = p.p;
    out.degenerate = p.degenerate;
    return out;
}

std::vector<TeamEffect> team_inference(const EffectEstimates& est, double alpha) {
    std::vector<TeamEffect> out;
    out.reserve(est.beta_hat.size());
    for (size_t i = 0; i < est.beta_hat.size(); ++i) {
        TeamEffect t;
        t.team = static_cast<int>(i);
        t.beta_hat = est.beta_hat[i];
        t.se = std::sqrt(est.cov_diag[i]);
        t.ci = confidence_interval(t.beta_hat, est.cov_diag[i], alpha);
        t.p_value = z_test(t.beta_hat, est.cov_diag[i]).p;
        out.push_back(t);
    }
    return out;
}

}  // namespace hfa
