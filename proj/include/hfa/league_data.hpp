#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hfa/types.hpp"

namespace hfa {

enum class PairingMode { Strict, Partial };

// Parses UTF-8 comma-delimited fixture data. The header row is mandatory:
// home_team, away_team, then <stat>_home and <stat>_away per statistic.
// Lines starting with '#' are metadata comments and are skipped.
//
// `schema` lists the statistic names that must be present. Errors: missing
// column (schema), non-numeric cell (schema, cites the fixture row),
// duplicate (home, away) fixture (schema, cites the fixture row).
MatchSet parse_matches(std::string_view raw, const std::vector<std::string>& schema);

// Reads the header row and infers the statistic list: every column pair
// <stat>_home / <stat>_away, in header order.
std::vector<std::string> infer_schema(std::string_view raw);

// Convenience: parse with the schema inferred from the header.
MatchSet parse_matches(std::string_view raw);

// Net outcome for one fixture: home value minus away value.
NetOutcome net_outcome(const MatchRecord& match, const std::string& stat);

// Folds mirror fixtures into unordered pair sums Y_{i,j} + Y_{j,i}.
// Strict mode requires a complete double round-robin and reports every
// absent pair on failure; partial mode keeps fully observed pairs and
// records the dropped ones.
PairedOutcomeSet pair_outcomes(const MatchSet& matches, const std::string& stat,
                               PairingMode mode = PairingMode::Strict);

// Same pairing applied to a dense net-outcome table (net[i][j] = outcome
// of the fixture with i at home, diagonal unused). The simulator feeds
// generated seasons through this path.
PairedOutcomeSet pair_net_table(int n, const std::vector<std::vector<double>>& net);

struct StatSummary {
    double mean_home = 0.0;
    double mean_away = 0.0;
    double overall_sd = 0.0;  // sample SD pooled over all side-values
};

// Per-statistic summary over all fixtures: home mean, away mean, and the
// sample standard deviation pooled over the 2 * record-count side-values.
StatSummary summarize_stat(const MatchSet& matches, const std::string& stat);

// CSV serialization of a MatchSet in the same schema parse_matches reads;
// parse(serialize(m)) round-trips every numeric field exactly.
std::string serialize_matches(const MatchSet& matches);

}  // namespace hfa
