#pragma once

#include <vector>

#include "hfa/types.hpp"

namespace hfa {

// The pairing design behind the pair-sum system: one implicit incidence
// row per unordered pair (ones at the two team columns), rhs = pair sums.
// For a complete season the Gram matrix is (n-2)I + J and everything
// downstream uses closed forms; partial designs fall back to a dense
// symmetric solve.
struct DesignSystem {
    int n = 0;
    std::vector<std::pair<int, int>> pairs;  // canonical (i, j), i < j
    std::vector<double> rhs;

    bool complete() const {
        return static_cast<long>(pairs.size()) ==
               static_cast<long>(n) * (n - 1) / 2;
    }
    // Total ordered matches behind the rows (two per retained pair).
    long match_count() const { return 2 * static_cast<long>(pairs.size()); }
};

struct EffectEstimates {
    std::vector<double> beta_hat;
    std::vector<double> residuals;       // H beta_hat - Y, per pair row
    double sigma2_beta_hat = 0.0;        // row-noise variance estimate (2 sigma0^2)
    std::vector<double> cov_diag;        // per-team sampling variance
    bool saturated = false;              // rows == unknowns: inference vacuous
};

// Validates and assembles the design. Requires n >= 3; partial designs
// must keep every team in at least one retained pair, the pair graph
// connected, and the incidence structure full-rank (an odd cycle must
// survive; a bipartite pair graph is rank-deficient).
DesignSystem build_design(const PairedOutcomeSet& pairs);

// Applies ((n-2)I + J)^{-1} via the rank-one closed form:
// v/(n-2) - sum(v) * 1 / ((n-2)(2n-2)). Valid for complete designs only.
std::vector<double> gram_inverse_apply(const std::vector<double>& v, int n);

// Least-squares solve of the pair-sum system. Complete designs use the
// closed-form Gram inverse (H is never materialized); partial designs
// assemble the normal equations and solve by Cholesky. Fills beta_hat and
// residuals; the variance fields are left for the callers below.
EffectEstimates solve_beta(const DesignSystem& design);

// 2 * ||H beta_hat - Y||^2 / N with N the ordered-match count. Set
// `df_corrected` to divide by (rows - n) instead; the plain form is the
// default everywhere, including the simulation metrics.
double residual_variance(const DesignSystem& design, const EffectEstimates& est,
                         bool df_corrected = false);

// Per-team sampling variance for a complete design: the Gram inverse has
// constant diagonal (2n-3)/((n-2)(2n-2)).
std::vector<double> beta_cov_diag(int n, double sigma2_beta_hat);

// Runs solve + residual variance + covariance diagonal in one pass.
// Partial designs invert the assembled Gram matrix for the diagonal.
EffectEstimates estimate_effects(const DesignSystem& design, bool df_corrected = false);

}  // namespace hfa
