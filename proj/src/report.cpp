#include "hfa/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hfa/errors.hpp"
#include "hfa/estimator.hpp"

namespace hfa {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// Machine formats use 17 significant digits so every value round-trips.
std::string g17(double v) { return fmt("%.17g", v); }

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw Error(ErrorKind::Argument,
                "unknown format '" + name + "' (expected table, csv, or json)");
}

PlotKind parse_plot_kind(const std::string& name) {
    if (name == "team_ci") return PlotKind::TeamCi;
    if (name == "pvalue_scatter") return PlotKind::PValueScatter;
    if (name == "net_diff_box") return PlotKind::NetDiffBox;
    throw Error(ErrorKind::Argument,
                "unknown plot kind '" + name +
                    "' (expected team_ci, pvalue_scatter, or net_diff_box)");
}

std::string fnv1a_hex(std::string_view bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ReportBundle build_report(const MatchSet& matches, const std::string& stat_selector,
                          double alpha, VarianceMode mode, PairingMode pairing,
                          const ReportMeta& meta, bool df_corrected) {
    std::vector<std::string> selected;
    if (stat_selector == "all") {
        selected = matches.stat_names;
        if (selected.empty()) {
            throw Error(ErrorKind::Schema,
                        "no statistic columns found (expected <stat>_home and "
                        "<stat>_away pairs)");
        }
    } else {
        bool known = false;
        for (const auto& s : matches.stat_names) known |= (s == stat_selector);
        if (!known) {
            throw Error(ErrorKind::Schema, "unknown statistic: " + stat_selector);
        }
        selected.push_back(stat_selector);
    }

    ReportBundle bundle;
    bundle.meta = meta;
    bundle.n = matches.team_count();
    bundle.team_labels = matches.roster;
    for (const auto& stat : selected) {
        PairedOutcomeSet pairs = pair_outcomes(matches, stat, pairing);
        DesignSystem design = build_design(pairs);
        EffectEstimates est = estimate_effects(design, df_corrected);
        StatReport sr;
        sr.statistic = stat;
        sr.league = league_inference(est, alpha, mode);
        sr.teams = team_inference(est, alpha);
        sr.dropped_pairs = static_cast<int>(pairs.dropped.size());
        sr.saturated = est.saturated;
        bundle.stats.push_back(std::move(sr));
    }
    return bundle;
}

std::string render_report_table(const ReportBundle& bundle) {
    std::ostringstream os;
    os << "League effects (alpha=" << fmt("%g", bundle.meta.alpha)
       << ", variance mode: " << variance_mode_name(bundle.meta.variance_mode) << ")\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s %10s %10s %9s %20s\n", "Statistic",
                  "Delta_hat", "Sigma_hat", "P-value", "CI");
    os << line;
    for (const auto& sr : bundle.stats) {
        std::string ci = "[" + fmt("%.3f", sr.league.ci.lower) + ", " +
                         fmt("%.3f", sr.league.ci.upper) + "]";
        std::snprintf(line, sizeof(line), "%-28s %10.3f %10.3f %9.3f %20s%s\n",
                      sr.statistic.c_str(), sr.league.delta_hat,
                      std::sqrt(sr.league.var_delta), sr.league.p_value, ci.c_str(),
                      sr.league.clamped ? "  (sigma2 clamped)" : "");
        os << line;
    }
    for (const auto& sr : bundle.stats) {
        os << "\nTeam effects: " << sr.statistic;
        if (sr.dropped_pairs > 0) os << "  (dropped pairs: " << sr.dropped_pairs << ")";
        if (sr.saturated) {
            os << "\n  warning: saturated system (pairs == teams); residual variance"
                  " is identically zero and team inference is vacuous";
        }
        os << "\n";
        std::snprintf(line, sizeof(line), "%-24s %10s %8s %22s %9s\n", "Team",
                      "Beta_hat", "SE", "CI", "P-value");
        os << line;
        for (const auto& t : sr.teams) {
            std::string ci = "[" + fmt("%.3f", t.ci.lower) + ", " +
                             fmt("%.3f", t.ci.upper) + "]";
            std::snprintf(line, sizeof(line), "%-24s %10.3f %8.3f %22s %9.3f\n",
                          bundle.team_labels[t.team].c_str(), t.beta_hat, t.se,
                          ci.c_str(), t.p_value);
            os << line;
        }
    }
    return os.str();
}

std::string render_report_csv(const ReportBundle& bundle) {
    std::ostringstream os;
    os << "kind,statistic,team,estimate,se,ci_lower,ci_upper,p_value,"
          "sigma2_raw,sigma2_clamped,clamped\n";
    for (const auto& sr : bundle.stats) {
        const LeagueInference& li = sr.league;
        os << "league," << sr.statistic << ",," << g17(li.delta_hat) << ','
           << g17(std::sqrt(li.var_delta)) << ',' << g17(li.ci.lower) << ','
           << g17(li.ci.upper) << ',' << g17(li.p_value) << ',' << g17(li.sigma2_raw)
           << ',' << g17(li.sigma2_clamped) << ',' << (li.clamped ? 1 : 0) << '\n';
    }
    for (const auto& sr : bundle.stats) {
        for (const auto& t : sr.teams) {
            os << "team," << sr.statistic << ',' << bundle.team_labels[t.team] << ','
               << g17(t.beta_hat) << ',' << g17(t.se) << ',' << g17(t.ci.lower) << ','
               << g17(t.ci.upper) << ',' << g17(t.p_value) << ",,,\n";
        }
    }
    return os.str();
}

nlohmann::json report_to_json(const ReportBundle& bundle) {
    nlohmann::json j;
    j["meta"] = {
        {"tool_version", bundle.meta.tool_version},
        {"input_path", bundle.meta.input_path},
        {"input_digest", bundle.meta.input_digest},
        {"alpha", bundle.meta.alpha},
        {"variance_mode", variance_mode_name(bundle.meta.variance_mode)},
        {"partial", bundle.meta.partial},
    };
    if (bundle.meta.seed) {
        j["meta"]["seed"] = *bundle.meta.seed;
    } else {
        j["meta"]["seed"] = nullptr;
    }
    j["n"] = bundle.n;
    j["team_labels"] = bundle.team_labels;
    j["stats"] = nlohmann::json::array();
    for (const auto& sr : bundle.stats) {
        nlohmann::json js;
        js["statistic"] = sr.statistic;
        js["dropped_pairs"] = sr.dropped_pairs;
        js["saturated"] = sr.saturated;
        js["league"] = {
            {"delta_hat", sr.league.delta_hat},
            {"sigma2_raw", sr.league.sigma2_raw},
            {"sigma2_clamped", sr.league.sigma2_clamped},
            {"clamped", sr.league.clamped},
            {"var_delta", sr.league.var_delta},
            {"ci", {sr.league.ci.lower, sr.league.ci.upper}},
            {"p_value", sr.league.p_value},
            {"degenerate", sr.league.degenerate},
        };
        js["teams"] = nlohmann::json::array();
        for (const auto& t : sr.teams) {
            js["teams"].push_back({
                {"team", t.team},
                {"label", bundle.team_labels[t.team]},
                {"beta_hat", t.beta_hat},
                {"se", t.se},
                {"ci", {t.ci.lower, t.ci.upper}},
                {"p_value", t.p_value},
            });
        }
        j["stats"].push_back(std::move(js));
    }
    return j;
}

ReportBundle report_from_json(const nlohmann::json& j) {
    ReportBundle bundle;
    const auto& meta = j.at("meta");
    bundle.meta.tool_version = meta.at("tool_version").get<std::string>();
    bundle.meta.input_path = meta.at("input_path").get<std::string>();
    bundle.meta.input_digest = meta.at("input_digest").get<std::string>();
    bundle.meta.alpha = meta.at("alpha").get<double>();
    bundle.meta.variance_mode = parse_variance_mode(meta.at("variance_mode").get<std::string>());
    bundle.meta.partial = meta.at("partial").get<bool>();
    if (!meta.at("seed").is_null()) bundle.meta.seed = meta.at("seed").get<uint64_t>();
    bundle.n = j.at("n").get<int>();
    bundle.team_labels = j.at("team_labels").get<std::vector<std::string>>();
    for (const auto& js : j.at("stats")) {
        StatReport sr;
        sr.statistic = js.at("statistic").get<std::string>();
        sr.dropped_pairs = js.at("dropped_pairs").get<int>();
        sr.saturated = js.at("saturated").get<bool>();
        const auto& l = js.at("league");
        sr.league.delta_hat = l.at("delta_hat").get<double>();
        sr.league.sigma2_raw = l.at("sigma2_raw").get<double>();
        sr.league.sigma2_clamped = l.at("sigma2_clamped").get<double>();
        sr.league.clamped = l.at("clamped").get<bool>();
        sr.league.var_delta = l.at("var_delta").get<double>();
        sr.league.ci = {l.at("ci")[0].get<double>(), l.at("ci")[1].get<double>()};
        sr.league.p_value = l.at("p_value").get<double>();
        sr.league.degenerate = l.at("degenerate").get<bool>();
        for (const auto& jt : js.at("teams")) {
            TeamEffect t;
            t.team = jt.at("team").get<int>();
            t.beta_hat = jt.at("beta_hat").get<double>();
            t.se = jt.at("se").get<double>();
            t.ci = {jt.at("ci")[0].get<double>(), jt.at("ci")[1].get<double>()};
            t.p_value = jt.at("p_value").get<double>();
            sr.teams.push_back(t);
        }
        bundle.stats.push_back(std::move(sr));
    }
    return bundle;
}

std::string render_summary_table(const MatchSet& matches, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "statistic,mean_home,mean_away,overall_sd\n";
        for (const auto& stat : matches.stat_names) {
            StatSummary s = summarize_stat(matches, stat);
            os << stat << ',' << g17(s.mean_home) << ',' << g17(s.mean_away) << ','
               << g17(s.overall_sd) << '\n';
        }
        return os.str();
    }
    if (format == OutputFormat::Json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& stat : matches.stat_names) {
            StatSummary s = summarize_stat(matches, stat);
            rows.push_back({{"statistic", stat},
                            {"mean_home", s.mean_home},
                            {"mean_away", s.mean_away},
                            {"overall_sd", s.overall_sd}});
        }
        return rows.dump(2) + "\n";
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s %10s %10s %11s\n", "Statistic",
                  "Mean Home", "Mean Away", "Overall SD");
    os << line;
    for (const auto& stat : matches.stat_names) {
        StatSummary s = summarize_stat(matches, stat);
        std::snprintf(line, sizeof(line), "%-28s %10.3f %10.3f %11.3f\n", stat.c_str(),
                      s.mean_home, s.mean_away, s.overall_sd);
        os << line;
    }
    return os.str();
}

std::string render_metrics(const std::vector<MetricsSummary>& rows, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "scenario,n,sigma0_sq,bias,cp,sv,mv\n";
        for (const auto& m : rows) {
            os << m.scenario << ',' << m.n << ',' << fmt("%g", m.sigma0_sq) << ','
               << g17(m.delta.bias) << ',' << g17(m.delta.cp) << ',' << g17(m.delta.sv)
               << ',' << g17(m.delta.mv) << '\n';
        }
        return os.str();
    }
    if (format == OutputFormat::Json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& m : rows) {
            nlohmann::json teams = nlohmann::json::array();
            for (const auto& t : m.teams) {
                teams.push_back(
                    {{"bias", t.bias}, {"cp", t.cp}, {"sv", t.sv}, {"mv", t.mv}});
            }
            out.push_back({{"scenario", m.scenario},
                           {"n", m.n},
                           {"sigma0_sq", m.sigma0_sq},
                           {"replicates", m.replicates},
                           {"bias", m.delta.bias},
                           {"cp", m.delta.cp},
                           {"sv", m.delta.sv},
                           {"mv", m.delta.mv},
                           {"negative_sigma2_count", m.negative_sigma2_count},
                           {"mean_sigma2_beta", m.mean_sigma2_beta},
                           {"teams", std::move(teams)}});
        }
        return out.dump(2) + "\n";
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%8s %4s %9s %9s %7s %8s %8s %11s\n", "scenario",
                  "n", "sigma0_sq", "bias", "cp", "sv", "mv", "neg_sigma2");
    os << line;
    for (const auto& m : rows) {
        std::snprintf(line, sizeof(line), "%8d %4d %9g %9.4f %7.3f %8.4f %8.4f %11d\n",
                      m.scenario, m.n, m.sigma0_sq, m.delta.bias, m.delta.cp, m.delta.sv,
                      m.delta.mv, m.negative_sigma2_count);
        os << line;
    }
    return os.str();
}

std::string emit_plot_data(const ReportBundle& bundle, PlotKind kind) {
    std::ostringstream os;
    if (kind == PlotKind::TeamCi) {
        os << "statistic,team,beta_hat,lower,upper\n";
        for (const auto& sr : bundle.stats) {
            for (const auto& t : sr.teams) {
                os << sr.statistic << ',' << bundle.team_labels[t.team] << ','
                   << g17(t.beta_hat) << ',' << g17(t.ci.lower) << ',' << g17(t.ci.upper)
                   << '\n';
            }
        }
        return os.str();
    }
    if (kind == PlotKind::PValueScatter) {
        os << "statistic,team,p_value\n";
        for (const auto& sr : bundle.stats) {
            for (const auto& t : sr.teams) {
                os << sr.statistic << ',' << bundle.team_labels[t.team] << ','
                   << g17(t.p_value) << '\n';
            }
        }
        return os.str();
    }
    throw Error(ErrorKind::Argument, "net_diff_box requires a match set, not a bundle");
}

std::string emit_net_diff_box(const MatchSet& matches, const std::string& stat,
                              PairingMode pairing) {
    const int n = matches.team_count();
    // value[i][j]: statistic for team i in the fixture hosted by i against j.
    std::vector<std::vector<double>> home_value(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> away_value(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
    for (const auto& rec : matches.records) {
        auto it = rec.stats.find(stat);
        if (it == rec.stats.end()) {
            throw Error(ErrorKind::Schema, "unknown statistic: " + stat);
        }
        home_value[rec.home.index][rec.away.index] = it->second.home;
        away_value[rec.home.index][rec.away.index] = it->second.away;
        present[rec.home.index][rec.away.index] = true;
    }

    std::ostringstream os;
    os << "team,pair_opponent,difference\n";
    std::vector<std::string> missing;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (present[i][j] && present[j][i]) {
                const double diff = home_value[i][j] - away_value[j][i];
                os << matches.roster[i] << ',' << matches.roster[j] << ',' << g17(diff)
                   << '\n';
            } else if (pairing == PairingMode::Strict && i < j) {
                missing.push_back("{" + matches.roster[i] + ", " + matches.roster[j] + "}");
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "incomplete double round-robin; missing pairs:";
        for (const auto& m : missing) msg += " " + m;
        throw Error(ErrorKind::Completeness, msg);
    }
    return os.str();
}

}  // namespace hfa
