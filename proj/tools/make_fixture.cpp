// Generates the bundled synthetic fixture: an EPL-shaped season (20 teams,
// double round-robin, 11 statistics) with known generator parameters. The
// parameters and seed are recorded as '#' comments in the file header so
// any analysis of the fixture can be checked against its ground truth.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hfa/rng.hpp"

namespace {

struct StatSpec {
    const char* name;
    double base;      // league-level mean of a side value
    double delta;     // true league home advantage
    double sigma;     // SD of per-team advantages around delta
    double noise_sd;  // match noise SD on the net scale
    double ability;   // per-team ability SD (net = ability difference + ...)
    double level_sd;  // shared match-level wobble of both sides
};

// Scales loosely follow a real top-flight season so the fixture exercises
// the pipeline on realistic magnitudes.
const StatSpec kStats[] = {
    {"attacks_with_shot", 10.8, 1.55, 0.9, 3.2, 1.6, 2.2},
    {"defence_interceptions", 43.6, -2.0, 1.5, 7.5, 3.5, 6.0},
    {"reaching_opponent_box", 13.9, 1.7, 1.0, 4.0, 2.2, 3.0},
    {"reaching_opponent_half", 56.8, 3.6, 2.0, 8.0, 4.0, 6.5},
    {"shots_blocked", 3.2, 0.35, 0.4, 1.5, 0.6, 1.0},
    {"shots_from_box", 7.0, 1.05, 0.7, 2.4, 1.1, 1.6},
    {"shots_from_danger_zone", 4.7, 0.8, 0.55, 1.8, 0.8, 1.2},
    {"successful_key_passes", 3.3, 0.5, 0.5, 1.5, 0.7, 1.0},
    {"touches_in_box", 18.3, 2.25, 1.5, 5.5, 2.8, 4.0},
    {"expected_goals", 1.49, 0.23, 0.16, 0.55, 0.28, 0.4},
    {"yellow_cards", 1.46, -0.03, 0.2, 0.75, 0.2, 0.5},
};

const char* kTeams[] = {
    "Ashworth Albion",    "Bramblegate FC",     "Carndale United",
    "Dunmorton Town",     "Eastmere Rovers",    "Foxfield Wanderers",
    "Gorsebrook City",    "Harrowgate Athletic", "Ironcliffe FC",
    "Kestrel Park",       "Lynmouth County",    "Marshlington FC",
    "Northhollow United", "Oakhaven Town",      "Pendlewick Rovers",
    "Quarrybridge FC",    "Ravensmoor City",    "Silverbeck Albion",
    "Thornbury Athletic", "Westcombe Wanderers",
};

std::string round3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate the bundled synthetic fixture"};
    uint64_t seed = 2021;
    std::string output = "data/synthetic_epl.csv";
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--output", output, "output path");
    CLI11_PARSE(app, argc, argv);

    const int n = 20;
    std::ofstream out(output, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << output << "\n";
        return 1;
    }

    out << "# synthetic fixture: 20 teams, complete double round-robin, 11 statistics\n";
    out << "# generator seed=" << seed << "\n";
    out << "# model per statistic: net = (Ab_home - Ab_away) + beta_home + eps with\n";
    out << "#   beta_i ~ Normal(delta, sigma^2), Ab_i ~ Normal(0, ability^2),\n";
    out << "#   eps ~ Normal(0, noise_sd^2); side values: common = base +\n";
    out << "#   Normal(0, level_sd^2), home = common + net/2, away = common - net/2,\n";
    out << "#   rounded to 3 decimals\n";
    for (const auto& s : kStats) {
        out << "# stat " << s.name << ": base=" << s.base << " delta=" << s.delta
            << " sigma=" << s.sigma << " noise_sd=" << s.noise_sd
            << " ability=" << s.ability << " level_sd=" << s.level_sd << "\n";
    }

    out << "home_team,away_team";
    for (const auto& s : kStats) out << ',' << s.name << "_home," << s.name << "_away";
    out << "\n";

    const size_t stat_count = sizeof(kStats) / sizeof(kStats[0]);
    // Per-stat draws, each from its own substream keyed by the stat index.
    std::vector<std::vector<double>> beta(stat_count), ability(stat_count);
    for (size_t s = 0; s < stat_count; ++s) {
        hfa::Stream beta_rng = hfa::substream(seed, s, hfa::StreamId::Beta);
        hfa::Stream ab_rng = hfa::substream(seed, s, hfa::StreamId::Alpha);
        beta[s].resize(n);
        ability[s].resize(n);
        for (int i = 0; i < n; ++i) {
            beta[s][i] = kStats[s].delta + kStats[s].sigma * beta_rng.next_normal();
            ability[s][i] = kStats[s].ability * ab_rng.next_normal();
        }
    }

    std::vector<hfa::Stream> eps_rng, level_rng;
    for (size_t s = 0; s < stat_count; ++s) {
        eps_rng.push_back(hfa::substream(seed, s, hfa::StreamId::Epsilon));
        level_rng.push_back(hfa::substream(seed, s, hfa::StreamId::MatchLevel));
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            out << kTeams[i] << ',' << kTeams[j];
            for (size_t s = 0; s < stat_count; ++s) {
                const double net = (ability[s][i] - ability[s][j]) + beta[s][i] +
                                   kStats[s].noise_sd * eps_rng[s].next_normal();
                const double common =
                    kStats[s].base + kStats[s].level_sd * level_rng[s].next_normal();
                out << ',' << round3(common + net / 2) << ',' << round3(common - net / 2);
            }
            out << "\n";
        }
    }
    return 0;
}
