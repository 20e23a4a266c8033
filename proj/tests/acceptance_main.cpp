// Acceptance suite: every release gate runs here, one PASS/FAIL line per
// criterion, all tolerances pinned in code. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hfa/estimator.hpp"
#include "hfa/inference.hpp"
#include "hfa/league_data.hpp"
#include "hfa/normal.hpp"
#include "hfa/simulation.hpp"
#include "test_util.hpp"

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!pass) ++failures;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

hfa::SimulationConfig cell_config(int scenario, int n, double sigma0_sq) {
    hfa::SimulationConfig c;
    c.scenario = scenario;
    c.n = n;
    c.sigma0_sq = sigma0_sq;
    c.replicates = 1000;
    c.seed = 7;
    return c;
}

std::string run_cli(const std::string& args, const std::string& capture) {
    std::string cmd = std::string(HFA_CLI_PATH) + " " + args + " > " + capture;
    if (std::system(cmd.c_str()) != 0) return "";
    std::ifstream in(capture, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 1. table2 grid cell (scenario 1, n=20, sigma0^2=1) at the pinned bands.
void criterion1() {
    auto start = std::chrono::steady_clock::now();
    hfa::MetricsSummary m = hfa::run_cell(cell_config(1, 20, 1.0));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    bool pass = std::abs(m.delta.bias) <= 0.02 && in_band(m.delta.cp, 0.90, 0.97) &&
                in_band(m.delta.sv, 0.005, 0.010) && in_band(m.delta.mv, 0.005, 0.010) &&
                secs <= 60.0;
    report(1, pass,
           "table2 s1 n=20 sigma0^2=1: bias=" + fmt("%.4f", m.delta.bias) +
               " cp=" + fmt("%.3f", m.delta.cp) + " sv=" + fmt("%.4f", m.delta.sv) +
               " mv=" + fmt("%.4f", m.delta.mv) + " runtime=" + fmt("%.2f", secs) + "s");
}

// 2. table2 grid cell (scenario 1, n=80, sigma0^2=0.5).
void criterion2() {
    hfa::MetricsSummary m = hfa::run_cell(cell_config(1, 80, 0.5));
    bool pass = std::abs(m.delta.bias) <= 0.01 && in_band(m.delta.cp, 0.93, 0.97) &&
                in_band(m.delta.sv, 0.0008, 0.0016) && in_band(m.delta.mv, 0.0008, 0.0016);
    report(2, pass,
           "table2 s1 n=80 sigma0^2=0.5: bias=" + fmt("%.4f", m.delta.bias) +
               " cp=" + fmt("%.3f", m.delta.cp) + " sv=" + fmt("%.4f", m.delta.sv) +
               " mv=" + fmt("%.4f", m.delta.mv));
}

// 3. SV tracks sigma^2/n + sigma0^2/(n(n-1)) for scenario 2 cells.
void criterion3() {
    bool pass = true;
    std::string detail = "scenario-2 SV vs analytic:";
    for (int n : {20, 40}) {
        for (double s0 : {0.5, 2.0}) {
            hfa::MetricsSummary m = hfa::run_cell(cell_config(2, n, s0));
            double analytic = 0.09 / n + s0 / (static_cast<double>(n) * (n - 1));
            double rel = std::abs(m.delta.sv - analytic) / analytic;
            pass = pass && rel <= 0.15;
            detail += " [n=" + std::to_string(n) + ",s0=" + fmt("%.1f", s0) +
                      ": rel=" + fmt("%.3f", rel) + "]";
        }
    }
    report(3, pass, detail);
}

// 4. Unbiasedness of the raw sigma^2 estimator at n=40.
void criterion4() {
    hfa::SimulationConfig c = cell_config(1, 40, 1.0);
    double mean_raw = 0.0;
    for (int r = 0; r < c.replicates; ++r) {
        mean_raw += hfa::run_replicate(c, r).sigma2_raw;
    }
    mean_raw /= c.replicates;
    bool pass = in_band(mean_raw, 0.08, 0.10);
    report(4, pass, "mean raw sigma2_hat=" + fmt("%.4f", mean_raw) +
                        " (true 0.09, band [0.08, 0.10])");
}

// 5. Noiseless seasons recover effects exactly.
void criterion5() {
    std::mt19937_64 rng(501);
    std::normal_distribution<double> dist(1.0, 2.0);
    bool pass = true;
    double worst = 0.0;
    for (int n : {3, 5, 20}) {
        std::vector<double> beta(n);
        for (double& b : beta) b = dist(rng);
        auto alpha = testutil::random_antisymmetric(n, rng);
        auto pairs = testutil::pairs_from_net(n, testutil::noiseless_net(beta, alpha));
        hfa::EffectEstimates est = hfa::solve_beta(hfa::build_design(pairs));
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(est.beta_hat[i] - beta[i]));
            mean += beta[i];
        }
        mean /= n;
        worst = std::max(worst, std::abs(hfa::delta_hat(est.beta_hat) - mean));
    }
    pass = worst <= 1e-10;
    report(5, pass, "noiseless recovery worst error=" + fmt("%.2e", worst) +
                        " (n in {3,5,20}, tol 1e-10)");
}

// 6. Closed-form solve equals the dense normal-equation oracle.
void criterion6() {
    std::mt19937_64 rng(601);
    std::uniform_int_distribution<int> pick_n(3, 12);
    std::normal_distribution<double> dist(0.0, 4.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = pick_n(rng);
        hfa::PairedOutcomeSet p;
        p.n = n;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                p.pairs.push_back(hfa::PairSum{i, j, dist(rng)});
            }
        }
        hfa::DesignSystem d = hfa::build_design(p);
        hfa::EffectEstimates est = hfa::solve_beta(d);
        std::vector<double> oracle = testutil::dense_oracle_solve(d);
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(est.beta_hat[i] - oracle[i]));
        }
    }
    report(6, worst <= 1e-10,
           "closed form vs dense oracle over 100 systems: worst=" + fmt("%.2e", worst));
}

// 7. Normal kernel accuracy.
void criterion7() {
    struct Ref {
        double x, phi;
    };
    static const Ref refs[] = {
        {-8.0, 6.220960574271784123516e-16},
        {-6.5, 4.016000583859117808346e-11},
        {-5.0, 2.866515718791939116738e-7},
        {-4.0, 0.00003167124183311992125377},
        {-3.0, 0.001349898031630094526652},
        {-2.5, 0.006209665325776135166978},
        {-1.959963984540054, 0.02500000000000001087617},
        {-1.5, 0.06680720126885806600449},
        {-1.0, 0.1586552539314570514148},
        {-0.5, 0.3085375387259868963623},
        {-0.1, 0.4601721627229710163311},
        {0.0, 0.5},
        {0.25, 0.5987063256829237242409},
        {0.75, 0.7733726476231318006729},
        {1.0, 0.8413447460685429485852},
        {1.959963984540054, 0.9749999999999999891238},
        {2.75, 0.9970202367649454432457},
        {4.5, 0.9999966023268752699396},
        {6.0, 0.9999999990134123549623},
        {8.0, 0.9999999999999993779039},
    };
    double worst_cdf = 0.0;
    for (const auto& r : refs) {
        worst_cdf = std::max(worst_cdf, std::abs(hfa::normal_cdf(r.x) - r.phi));
    }
    double worst_rt = 0.0;
    for (double x = -6.0; x <= 6.0 + 1e-12; x += 0.01) {
        worst_rt =
            std::max(worst_rt, std::abs(hfa::normal_quantile(hfa::normal_cdf(x)) - x));
    }
    bool pass = worst_cdf <= 1e-10 && worst_rt <= 1e-8;
    report(7, pass, "cdf worst=" + fmt("%.2e", worst_cdf) +
                        " (tol 1e-10), quantile round-trip worst=" +
                        fmt("%.2e", worst_rt) + " (tol 1e-8)");
}

// 8. Per-team CI coverage against realized effects.
void criterion8() {
    bool pass = true;
    std::string detail = "per-team coverage:";
    for (int n : {20, 40}) {
        hfa::MetricsSummary m = hfa::run_cell(cell_config(1, n, 1.0));
        double pooled = 0.0;
        for (const auto& t : m.teams) pooled += t.cp;
        pooled /= m.teams.size();
        pass = pass && in_band(pooled, 0.93, 0.97);
        detail += " [n=" + std::to_string(n) + ": cp=" + fmt("%.4f", pooled) + "]";
    }
    report(8, pass, detail + " (band [0.93, 0.97])");
}

// 9. Byte-identical pipeline outputs.
void criterion9() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hfa_acceptance";
    fs::create_directories(dir);
    std::string grid_a = run_cli("simulate --grid table2 --seed 7 --format csv",
                                 (dir / "grid_a.csv").string());
    std::string grid_b = run_cli("simulate --grid table2 --seed 7 --format csv",
                                 (dir / "grid_b.csv").string());
    std::string est_a =
        run_cli(std::string("estimate --input ") + HFA_FIXTURE_PATH + " --format csv",
                (dir / "est_a.csv").string());
    std::string est_b =
        run_cli(std::string("estimate --input ") + HFA_FIXTURE_PATH + " --format csv",
                (dir / "est_b.csv").string());
    bool pass = !grid_a.empty() && grid_a == grid_b && !est_a.empty() && est_a == est_b;
    report(9, pass,
           "grid rerun identical=" + std::string(grid_a == grid_b ? "yes" : "no") +
               " (" + std::to_string(grid_a.size()) + " bytes), estimate rerun identical=" +
               (est_a == est_b ? "yes" : "no") + " (" + std::to_string(est_a.size()) +
               " bytes)");
}

// 10. Null calibration of team-level tests.
void criterion10() {
    hfa::SimulationConfig c = cell_config(1, 20, 1.0);
    c.delta_true = 0.0;
    c.sigma_true = 0.0;
    long rejections = 0, total = 0;
    for (int r = 0; r < c.replicates; ++r) {
        hfa::ReplicateResult rr = hfa::run_replicate(c, r);
        for (double p : rr.team_p) {
            rejections += p < 0.05;
            ++total;
        }
    }
    double fraction = static_cast<double>(rejections) / static_cast<double>(total);
    bool pass = in_band(fraction, 0.03, 0.07);
    report(10, pass, "null rejection fraction=" + fmt("%.4f", fraction) +
                         " over " + std::to_string(total) + " tests (band [0.03, 0.07])");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
