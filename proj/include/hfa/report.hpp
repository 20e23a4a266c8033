#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hfa/inference.hpp"
#include "hfa/league_data.hpp"
#include "hfa/simulation.hpp"

namespace hfa {

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_output_format(const std::string& name);

struct ReportMeta {
    std::string tool_version;
    std::string input_path;
    std::string input_digest;  // fnv1a-64 of the raw input bytes, hex
    double alpha = 0.05;
    VarianceMode variance_mode = VarianceMode::Total;
    bool partial = false;
    std::optional<uint64_t> seed;
};

struct StatReport {
    std::string statistic;
    LeagueInference league;
    std::vector<TeamEffect> teams;
    int dropped_pairs = 0;
    bool saturated = false;  // rows == unknowns: team inference is vacuous
};

struct ReportBundle {
    ReportMeta meta;
    int n = 0;
    std::vector<std::string> team_labels;
    std::vector<StatReport> stats;
};

// FNV-1a 64-bit fingerprint, lowercase hex.
std::string fnv1a_hex(std::string_view bytes);

// Runs the full pipeline (pairing, solve, inference) for the selected
// statistics. `stat_selector` is a statistic name or "all".
ReportBundle build_report(const MatchSet& matches, const std::string& stat_selector,
                          double alpha, VarianceMode mode, PairingMode pairing,
                          const ReportMeta& meta, bool df_corrected = false);

// Renderers. JSON carries every numeric field with exact round-trip
// precision; the table rounds to 3-4 decimals.
std::string render_report_table(const ReportBundle& bundle);
std::string render_report_csv(const ReportBundle& bundle);
nlohmann::json report_to_json(const ReportBundle& bundle);
ReportBundle report_from_json(const nlohmann::json& j);

// Per-statistic summary rows: home mean, away mean, overall SD.
std::string render_summary_table(const MatchSet& matches, OutputFormat format);

// Simulation metrics rows keyed by (scenario, n, sigma0_sq) with the four
// study columns (bias, cp, sv, mv).
std::string render_metrics(const std::vector<MetricsSummary>& rows, OutputFormat format);

// Tidy plot-data files.
enum class PlotKind { TeamCi, PValueScatter, NetDiffBox };
PlotKind parse_plot_kind(const std::string& name);

// team_ci: statistic,team,beta_hat,lower,upper
// pvalue_scatter: statistic,team,p_value
std::string emit_plot_data(const ReportBundle& bundle, PlotKind kind);

// net_diff_box: team,pair_opponent,difference — the per-opponent
// home-minus-away difference of one statistic (n-1 rows per team when
// the season is complete).
std::string emit_net_diff_box(const MatchSet& matches, const std::string& stat,
                              PairingMode pairing);

}  // namespace hfa
