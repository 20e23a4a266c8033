// hfa — home-field-advantage estimation from paired round-robin match data.
//
// Subcommands: estimate, simulate, report, plotdata. All state is passed
// via flags (no environment variables), so every run is reproducible from
// its command line.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hfa/errors.hpp"
#include "hfa/report.hpp"
#include "hfa/version.hpp"

namespace {

// Exit codes, one per error family (documented in --help):
//   0 ok, 64 usage, 65 schema/data, 66 io, 67 completeness, 68 rank.
constexpr int kExitUsage = 64;
constexpr int kExitSchema = 65;
constexpr int kExitIo = 66;
constexpr int kExitCompleteness = 67;
constexpr int kExitRank = 68;

int exit_code_for(const hfa::Error& e) {
    switch (e.kind()) {
        case hfa::ErrorKind::Argument: return kExitUsage;
        case hfa::ErrorKind::Io: return kExitIo;
        case hfa::ErrorKind::Schema: return kExitSchema;
        case hfa::ErrorKind::Completeness: return kExitCompleteness;
        case hfa::ErrorKind::Rank: return kExitRank;
    }
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw hfa::Error(hfa::ErrorKind::Io, "cannot open input file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw hfa::Error(hfa::ErrorKind::Io, "cannot open output file: " + path);
    }
    out << content;
}

struct EstimateArgs {
    std::string input;
    std::string stat = "all";
    double alpha = 0.05;
    std::string variance_mode = "total";
    std::string format = "table";
    std::string output;
    bool partial = false;
    bool df_corrected = false;
};

hfa::ReportBundle run_estimate(const EstimateArgs& args) {
    const std::string raw = read_file(args.input);
    hfa::MatchSet matches = hfa::parse_matches(raw);
    hfa::ReportMeta meta;
    meta.tool_version = hfa::kVersion;
    meta.input_path = args.input;
    meta.input_digest = hfa::fnv1a_hex(raw);
    meta.alpha = args.alpha;
    meta.variance_mode = hfa::parse_variance_mode(args.variance_mode);
    meta.partial = args.partial;
    auto pairing = args.partial ? hfa::PairingMode::Partial : hfa::PairingMode::Strict;
    if (!(args.alpha > 0.0) || !(args.alpha < 1.0)) {
        throw hfa::Error(hfa::ErrorKind::Argument, "--alpha must lie in (0, 1)");
    }
    return hfa::build_report(matches, args.stat, args.alpha, meta.variance_mode, pairing,
                             meta, args.df_corrected);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hfa: team- and league-level home field advantage estimation"};
    app.set_version_flag("--version", hfa::kVersion);
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 64 usage error, 65 schema/data error, 66 I/O error,\n"
        "67 incomplete round-robin (strict mode), 68 rank/insufficient-teams error.\n"
        "Plot data is emitted on raw statistic scales; a --standardize option is\n"
        "reserved but not implemented.");

    EstimateArgs est;
    CLI::App* estimate = app.add_subcommand(
        "estimate", "Estimate per-team and league effects from a fixture file");
    estimate->add_option("--input", est.input, "fixture CSV")->required();
    estimate->add_option("--stat", est.stat, "statistic name or 'all' (default all)");
    estimate->add_option("--alpha", est.alpha, "CI level alpha (default 0.05)");
    estimate->add_option("--variance-mode", est.variance_mode, "literal|total (default total)");
    estimate->add_option("--format", est.format, "table|csv|json (default table)");
    estimate->add_option("--output", est.output, "output path (default stdout)");
    estimate->add_flag("--partial", est.partial,
                       "keep fully observed pairs instead of requiring a complete season");
    estimate->add_flag("--df-corrected", est.df_corrected,
                       "degrees-of-freedom corrected residual variance (not the default)");

    EstimateArgs rep = est;
    CLI::App* report = app.add_subcommand(
        "report", "Summary statistics plus league effects for every statistic");
    report->add_option("--input", rep.input, "fixture CSV")->required();
    report->add_option("--alpha", rep.alpha, "CI level alpha (default 0.05)");
    report->add_option("--variance-mode", rep.variance_mode, "literal|total (default total)");
    report->add_option("--format", rep.format, "table|csv|json (default table)");
    report->add_option("--output", rep.output, "output path (default stdout)");
    report->add_flag("--partial", rep.partial, "partial-season pairing");

    struct {
        int scenario = 1;
        int teams = 20;
        double sigma0_sq = 1.0;
        int reps = 1000;
        uint64_t seed = 0;
        double alpha = 0.05;
        double delta_true = 1.0;
        double sigma_true = 0.3;
        double alpha_scale = 2.0;
        std::string variance_mode = "total";
        std::string grid;
        std::string format = "table";
        std::string output;
    } sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo study of the estimators");
    simulate->add_option("--scenario", sim.scenario, "1|2 (default 1)");
    simulate->add_option("--teams", sim.teams, "team count n (default 20)");
    simulate->add_option("--sigma0-sq", sim.sigma0_sq, "match-noise variance (default 1)");
    simulate->add_option("--reps", sim.reps, "replicates (default 1000)");
    simulate->add_option("--seed", sim.seed, "RNG seed (default 0)");
    simulate->add_option("--alpha", sim.alpha, "CI level alpha (default 0.05)");
    simulate->add_option("--delta-true", sim.delta_true, "true league effect (default 1)");
    simulate->add_option("--sigma-true", sim.sigma_true, "team-effect SD (default 0.3)");
    simulate->add_option("--alpha-scale", sim.alpha_scale, "ability SD (default 2)");
    simulate->add_option("--variance-mode", sim.variance_mode, "literal|total (default total)");
    simulate->add_option("--grid", sim.grid, "'table2' runs the full 2x4x3 grid");
    simulate->add_option("--format", sim.format, "table|csv|json (default table)");
    simulate->add_option("--output", sim.output, "output path (default stdout)");

    struct {
        std::string input;
        std::string kind;
        std::string stat = "all";
        double alpha = 0.05;
        std::string variance_mode = "total";
        std::string output;
        bool partial = false;
    } plot;
    CLI::App* plotdata =
        app.add_subcommand("plotdata", "Tidy data files behind the report figures");
    plotdata->add_option("--input", plot.input, "fixture CSV")->required();
    plotdata->add_option("--kind", plot.kind, "team_ci|pvalue_scatter|net_diff_box")
        ->required();
    plotdata->add_option("--stat", plot.stat,
                         "statistic name, or 'all' (net_diff_box needs a single name)");
    plotdata->add_option("--alpha", plot.alpha, "CI level alpha (default 0.05)");
    plotdata->add_option("--variance-mode", plot.variance_mode, "literal|total");
    plotdata->add_option("--output", plot.output, "output path (default stdout)");
    plotdata->add_flag("--partial", plot.partial, "partial-season pairing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*estimate) {
            hfa::ReportBundle bundle = run_estimate(est);
            hfa::OutputFormat format = hfa::parse_output_format(est.format);
            std::string rendered;
            if (format == hfa::OutputFormat::Table) {
                rendered = hfa::render_report_table(bundle);
            } else if (format == hfa::OutputFormat::Csv) {
                rendered = hfa::render_report_csv(bundle);
            } else {
                rendered = hfa::report_to_json(bundle).dump(2) + "\n";
            }
            write_output(est.output, rendered);
        } else if (*report) {
            const std::string raw = read_file(rep.input);
            hfa::MatchSet matches = hfa::parse_matches(raw);
            hfa::OutputFormat format = hfa::parse_output_format(rep.format);
            rep.stat = "all";
            hfa::ReportBundle bundle = run_estimate(rep);
            std::string rendered = hfa::render_summary_table(matches, format);
            if (format == hfa::OutputFormat::Table) {
                rendered += "\n" + hfa::render_report_table(bundle);
            } else if (format == hfa::OutputFormat::Csv) {
                rendered += "\n" + hfa::render_report_csv(bundle);
            } else {
                nlohmann::json j;
                j["summary"] = nlohmann::json::parse(rendered);
                j["report"] = hfa::report_to_json(bundle);
                rendered = j.dump(2) + "\n";
            }
            write_output(rep.output, rendered);
        } else if (*simulate) {
            hfa::SimulationConfig cfg;
            cfg.scenario = sim.scenario;
            cfg.n = sim.teams;
            cfg.sigma0_sq = sim.sigma0_sq;
            cfg.replicates = sim.reps;
            cfg.seed = sim.seed;
            cfg.level = sim.alpha;
            cfg.delta_true = sim.delta_true;
            cfg.sigma_true = sim.sigma_true;
            cfg.alpha_scale = sim.alpha_scale;
            cfg.variance_mode = hfa::parse_variance_mode(sim.variance_mode);
            std::vector<hfa::MetricsSummary> rows;
            if (!sim.grid.empty()) {
                if (sim.grid != "table2") {
                    throw hfa::Error(hfa::ErrorKind::Argument,
                                     "unknown grid '" + sim.grid + "' (expected table2)");
                }
                rows = hfa::run_table2_grid(cfg);
            } else {
                rows.push_back(hfa::run_cell(cfg));
            }
            hfa::OutputFormat format = hfa::parse_output_format(sim.format);
            write_output(sim.output, hfa::render_metrics(rows, format));
        } else if (*plotdata) {
            const std::string raw = read_file(plot.input);
            hfa::MatchSet matches = hfa::parse_matches(raw);
            hfa::PlotKind kind = hfa::parse_plot_kind(plot.kind);
            auto pairing =
                plot.partial ? hfa::PairingMode::Partial : hfa::PairingMode::Strict;
            std::string rendered;
            if (kind == hfa::PlotKind::NetDiffBox) {
                if (plot.stat == "all") {
                    throw hfa::Error(hfa::ErrorKind::Argument,
                                     "net_diff_box needs a single --stat name");
                }
                rendered = hfa::emit_net_diff_box(matches, plot.stat, pairing);
            } else {
                hfa::ReportMeta meta;
                meta.tool_version = hfa::kVersion;
                meta.input_path = plot.input;
                meta.input_digest = hfa::fnv1a_hex(raw);
                meta.alpha = plot.alpha;
                meta.variance_mode = hfa::parse_variance_mode(plot.variance_mode);
                meta.partial = plot.partial;
                hfa::ReportBundle bundle = hfa::build_report(
                    matches, plot.stat, plot.alpha, meta.variance_mode, pairing, meta);
                rendered = hfa::emit_plot_data(bundle, kind);
            }
            write_output(plot.output, rendered);
        }
    } catch (const hfa::Error& e) {
        std::cerr << "hfa: " << hfa::error_kind_name(e.kind()) << " error: " << e.what()
                  << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "hfa: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
