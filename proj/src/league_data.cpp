#include "hfa/league_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hfa/errors.hpp"

namespace hfa {

namespace {

std::string trim(std::string_view s) {
    size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return "";
    size_t last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

// Non-comment, non-empty lines of the input; first is the header.
std::vector<std::string_view> data_lines(std::string_view raw) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos <= raw.size()) {
        size_t eol = raw.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? raw.substr(pos)
                                    : raw.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
        if (!blank && line[line.find_first_not_of(" \t")] != '#') {
            lines.push_back(line);
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return lines;
}

double parse_cell(const std::string& cell, int row, const std::string& column) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || cell.empty()) {
        throw Error(ErrorKind::Schema,
                    "non-numeric value '" + cell + "' in column " + column +
                        " at fixture row " + std::to_string(row));
    }
    return value;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<std::string> infer_schema(std::string_view raw) {
    auto lines = data_lines(raw);
    if (lines.empty()) {
        throw Error(ErrorKind::Schema, "empty input: header row is mandatory");
    }
    auto header = split_csv_line(lines[0]);
    std::set<std::string> columns(header.begin(), header.end());
    std::vector<std::string> schema;
    for (const auto& col : header) {
        if (col.size() > 5 && col.ends_with("_home")) {
            std::string stat = col.substr(0, col.size() - 5);
            if (columns.count(stat + "_away")) schema.push_back(stat);
        }
    }
    return schema;
}

MatchSet parse_matches(std::string_view raw) {
    return parse_matches(raw, infer_schema(raw));
}

MatchSet parse_matches(std::string_view raw, const std::vector<std::string>& schema) {
    auto lines = data_lines(raw);
    if (lines.empty()) {
        throw Error(ErrorKind::Schema, "empty input: header row is mandatory");
    }
    auto header = split_csv_line(lines[0]);
    std::unordered_map<std::string, int> col_index;
    for (size_t c = 0; c < header.size(); ++c) col_index.emplace(header[c], static_cast<int>(c));

    auto require_column = [&](const std::string& name) -> int {
        auto it = col_index.find(name);
        if (it == col_index.end()) {
            throw Error(ErrorKind::Schema, "missing column: " + name);
        }
        return it->second;
    };

    int home_col = require_column("home_team");
    int away_col = require_column("away_team");
    std::vector<std::pair<int, int>> stat_cols;
    stat_cols.reserve(schema.size());
    for (const auto& stat : schema) {
        stat_cols.emplace_back(require_column(stat + "_home"), require_column(stat + "_away"));
    }

    // First pass: roster from the union of labels, lexicographic indices.
    std::set<std::string> labels;
    for (size_t r = 1; r < lines.size(); ++r) {
        auto cells = split_csv_line(lines[r]);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::Schema,
                        "fixture row " + std::to_string(r) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        }
        labels.insert(cells[home_col]);
        labels.insert(cells[away_col]);
    }

    MatchSet out;
    out.roster.assign(labels.begin(), labels.end());
    out.stat_names = schema;
    std::unordered_map<std::string, int> index_of;
    for (size_t i = 0; i < out.roster.size(); ++i) index_of.emplace(out.roster[i], static_cast<int>(i));

    std::set<std::pair<int, int>> seen;
    for (size_t r = 1; r < lines.size(); ++r) {
        int row = static_cast<int>(r);  // 1-based fixture row ordinal
        auto cells = split_csv_line(lines[r]);
        MatchRecord rec;
        rec.home = TeamId{index_of.at(cells[home_col]), cells[home_col]};
        rec.away = TeamId{index_of.at(cells[away_col]), cells[away_col]};
        if (rec.home.index == rec.away.index) {
            throw Error(ErrorKind::Schema,
                        "fixture row " + std::to_string(row) + ": team '" +
                            rec.home.label + "' plays itself");
        }
        if (!seen.emplace(rec.home.index, rec.away.index).second) {
            throw Error(ErrorKind::Schema,
                        "duplicate fixture (" + rec.home.label + " vs " + rec.away.label +
                            ") at fixture row " + std::to_string(row));
        }
        for (size_t s = 0; s < schema.size(); ++s) {
            SideValues v;
            v.home = parse_cell(cells[stat_cols[s].first], row, schema[s] + "_home");
            v.away = parse_cell(cells[stat_cols[s].second], row, schema[s] + "_away");
            rec.stats.emplace(schema[s], v);
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

NetOutcome net_outcome(const MatchRecord& match, const std::string& stat) {
    auto it = match.stats.find(stat);
    if (it == match.stats.end()) {
        throw Error(ErrorKind::Schema, "unknown statistic: " + stat);
    }
    return NetOutcome{match.home, match.away, it->second.home - it->second.away};
}

PairedOutcomeSet pair_outcomes(const MatchSet& matches, const std::string& stat,
                               PairingMode mode) {
    const int n = matches.team_count();
    // Ordered-pair lookup of net outcomes.
    std::map<std::pair<int, int>, double> net;
    for (const auto& rec : matches.records) {
        NetOutcome y = net_outcome(rec, stat);
        net.emplace(std::make_pair(y.home.index, y.away.index), y.value);
    }

    PairedOutcomeSet out;
    out.n = n;
    std::vector<std::string> missing;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto fwd = net.find({i, j});
            auto rev = net.find({j, i});
            if (fwd != net.end() && rev != net.end()) {
                out.pairs.push_back(PairSum{i, j, fwd->second + rev->second});
            } else if (mode == PairingMode::Strict) {
                missing.push_back("{" + matches.roster[i] + ", " + matches.roster[j] + "}");
            } else {
                out.dropped.emplace_back(i, j);
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "incomplete double round-robin; missing pairs:";
        for (const auto& m : missing) msg += " " + m;
        throw Error(ErrorKind::Completeness, msg);
    }
    return out;
}

PairedOutcomeSet pair_net_table(int n, const std::vector<std::vector<double>>& net) {
    PairedOutcomeSet out;
    out.n = n;
    out.pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            out.pairs.push_back(PairSum{i, j, net[i][j] + net[j][i]});
        }
    }
    return out;
}

StatSummary summarize_stat(const MatchSet& matches, const std::string& stat) {
    if (matches.records.empty()) {
        throw Error(ErrorKind::Argument, "summarize_stat: empty match set");
    }
    double home_sum = 0.0, away_sum = 0.0;
    std::vector<double> side_values;
    side_values.reserve(matches.records.size() * 2);
    for (const auto& rec : matches.records) {
        auto it = rec.stats.find(stat);
        if (it == rec.stats.end()) {
            throw Error(ErrorKind::Schema, "unknown statistic: " + stat);
        }
        home_sum += it->second.home;
        away_sum += it->second.away;
        side_values.push_back(it->second.home);
        side_values.push_back(it->second.away);
    }
    const double m = static_cast<double>(matches.records.size());
    StatSummary s;
    s.mean_home = home_sum / m;
    s.mean_away = away_sum / m;
    double mean_all = (home_sum + away_sum) / (2.0 * m);
    double ss = 0.0;
    for (double v : side_values) ss += (v - mean_all) * (v - mean_all);
    s.overall_sd = side_values.size() > 1 ? std::sqrt(ss / (side_values.size() - 1)) : 0.0;
    return s;
}

std::string serialize_matches(const MatchSet& matches) {
    std::ostringstream os;
    os << "home_team,away_team";
    for (const auto& stat : matches.stat_names) {
        os << ',' << stat << "_home," << stat << "_away";
    }
    os << '\n';
    for (const auto& rec : matches.records) {
        os << rec.home.label << ',' << rec.away.label;
        for (const auto& stat : matches.stat_names) {
            const SideValues& v = rec.stats.at(stat);
            os << ',' << format_double(v.home) << ',' << format_double(v.away);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace hfa
