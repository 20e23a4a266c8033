#include "hfa/estimator.hpp"

#include <cmath>
#include <numeric>
#include <queue>

#include "hfa/errors.hpp"

namespace hfa {

namespace {

// Dense symmetric positive definite solve, used only for partial designs
// (n is small). Factorizes in place; a non-positive pivot means the
// incidence structure lost rank.
class Cholesky {
  public:
    explicit Cholesky(std::vector<std::vector<double>> g) : l_(std::move(g)) {
        const size_t n = l_.size();
        for (size_t j = 0; j < n; ++j) {
            double d = l_[j][j];
            for (size_t k = 0; k < j; ++k) d -= l_[j][k] * l_[j][k];
            if (d <= 1e-9) {
                throw Error(ErrorKind::Rank,
                            "rank-deficient design: the retained pairs do not "
                            "identify all team effects");
            }
            l_[j][j] = std::sqrt(d);
            for (size_t i = j + 1; i < n; ++i) {
                double s = l_[i][j];
                for (size_t k = 0; k < j; ++k) s -= l_[i][k] * l_[j][k];
                l_[i][j] = s / l_[j][j];
            }
        }
    }

    std::vector<double> solve(std::vector<double> b) const {
        const size_t n = l_.size();
        for (size_t i = 0; i < n; ++i) {
            double s = b[i];
            for (size_t k = 0; k < i; ++k) s -= l_[i][k] * b[k];
            b[i] = s / l_[i][i];
        }
        for (size_t i = n; i-- > 0;) {
            double s = b[i];
            for (size_t k = i + 1; k < n; ++k) s -= l_[k][i] * b[k];
            b[i] = s / l_[i][i];
        }
        return b;
    }

    // Diagonal of the inverse, column by column.
    std::vector<double> inverse_diag() const {
        const size_t n = l_.size();
        std::vector<double> diag(n);
        std::vector<double> e(n);
        for (size_t c = 0; c < n; ++c) {
            std::fill(e.begin(), e.end(), 0.0);
            e[c] = 1.0;
            diag[c] = solve(e)[c];
        }
        return diag;
    }

  private:
    std::vector<std::vector<double>> l_;
};

std::vector<std::vector<double>> assemble_gram(const DesignSystem& design) {
    std::vector<std::vector<double>> g(design.n, std::vector<double>(design.n, 0.0));
    for (const auto& [i, j] : design.pairs) {
        g[i][i] += 1.0;
        g[j][j] += 1.0;
        g[i][j] += 1.0;
        g[j][i] += 1.0;
    }
    return g;
}

std::vector<double> ht_y(const DesignSystem& design) {
    std::vector<double> t(design.n, 0.0);
    for (size_t k = 0; k < design.pairs.size(); ++k) {
        t[design.pairs[k].first] += design.rhs[k];
        t[design.pairs[k].second] += design.rhs[k];
    }
    return t;
}

// Partial designs: every team in >= 1 pair and the pair graph connected,
// plus an odd cycle (the unsigned incidence matrix of a connected
// bipartite graph has rank n-1 only).
void check_partial_rank(const DesignSystem& design) {
    const int n = design.n;
    std::vector<std::vector<int>> adj(n);
    for (const auto& [i, j] : design.pairs) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<int> color(n, -1);
    color[0] = 0;
    std::queue<int> q;
    q.push(0);
    int visited = 1;
    bool bipartite = true;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u]) {
            if (color[v] == -1) {
                color[v] = 1 - color[u];
                ++visited;
                q.push(v);
            } else if (color[v] == color[u]) {
                bipartite = false;
            }
        }
    }
    if (visited != n) {
        throw Error(ErrorKind::Rank,
                    "disconnected partial design: " + std::to_string(n - visited) +
                        " team(s) unreachable from the retained pairs");
    }
    if (bipartite) {
        throw Error(ErrorKind::Rank,
                    "rank-deficient partial design: retained pair graph is bipartite");
    }
}

}  // namespace

DesignSystem build_design(const PairedOutcomeSet& pairs) {
    if (pairs.n < 3) {
        throw Error(ErrorKind::Rank, "insufficient teams: need n >= 3, got " +
                                         std::to_string(pairs.n));
    }
    DesignSystem design;
    design.n = pairs.n;
    design.pairs.reserve(pairs.pairs.size());
    design.rhs.reserve(pairs.pairs.size());
    for (const auto& p : pairs.pairs) {
        design.pairs.emplace_back(p.i, p.j);
        design.rhs.push_back(p.sum);
    }
    if (!design.complete()) check_partial_rank(design);
    return design;
}

std::vector<double> gram_inverse_apply(const std::vector<double>& v, int n) {
    if (n < 3) {
        throw Error(ErrorKind::Rank, "insufficient teams: need n >= 3, got " +
                                         std::to_string(n));
    }
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    const double a = 1.0 / (n - 2);
    const double b = sum / (static_cast<double>(n - 2) * (2 * n - 2));
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * a - b;
    return out;
}

EffectEstimates solve_beta(const DesignSystem& design) {
    EffectEstimates est;
    std::vector<double> t = ht_y(design);
    if (design.complete()) {
        est.beta_hat = gram_inverse_apply(t, design.n);
    } else {
        Cholesky chol(assemble_gram(design));
        est.beta_hat = chol.solve(std::move(t));
    }
    est.residuals.resize(design.pairs.size());
    for (size_t k = 0; k < design.pairs.size(); ++k) {
        est.residuals[k] = est.beta_hat[design.pairs[k].first] +
                           est.beta_hat[design.pairs[k].second] - design.rhs[k];
    }
    est.saturated = design.pairs.size() == static_cast<size_t>(design.n);
    return est;
}

double residual_variance(const DesignSystem& design, const EffectEstimates& est,
                         bool df_corrected) {
    double ss = 0.0;
    for (double r : est.residuals) ss += r * r;
    if (df_corrected) {
        const long df = static_cast<long>(design.pairs.size()) - design.n;
        return df > 0 ? ss / static_cast<double>(df) : 0.0;
    }
    return 2.0 * ss / static_cast<double>(design.match_count());
}

std::vector<double> beta_cov_diag(int n, double sigma2_beta_hat) {
    if (n < 3) {
        throw Error(ErrorKind::Rank, "insufficient teams: need n >= 3, got " +
                                         std::to_string(n));
    }
    const double diag = static_cast<double>(2 * n - 3) /
                        (static_cast<double>(n - 2) * (2 * n - 2));
    return std::vector<double>(n, sigma2_beta_hat * diag);
}

EffectEstimates estimate_effects(const DesignSystem& design, bool df_corrected) {
    EffectEstimates est = solve_beta(design);
    est.sigma2_beta_hat = residual_variance(design, est, df_corrected);
    if (design.complete()) {
        est.cov_diag = beta_cov_diag(design.n, est.sigma2_beta_hat);
    } else {
        Cholesky chol(assemble_gram(design));
        est.cov_diag = chol.inverse_diag();
        for (double& d : est.cov_diag) d *= est.sigma2_beta_hat;
    }
    return est;
}

}  // namespace hfa
