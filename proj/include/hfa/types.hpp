#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hfa {

// A team in a league roster. Indices are assigned lexicographically by
// label, so the same input file always yields the same ordering.
struct TeamId {
    int index = -1;
    std::string label;
};

// Values of one statistic for the two sides of a fixture.
struct SideValues {
    double home = 0.0;
    double away = 0.0;
};

// One fixture: home team, away team, and every declared statistic for
// both sides.
struct MatchRecord {
    TeamId home;
    TeamId away;
    std::map<std::string, SideValues> stats;
};

// A parsed season: roster (index -> label, lexicographic), declared
// statistic names in schema order, and one record per fixture.
struct MatchSet {
    std::vector<std::string> roster;
    std::vector<std::string> stat_names;
    std::vector<MatchRecord> records;

    int team_count() const { return static_cast<int>(roster.size()); }
};

// Net outcome of one fixture for one statistic: home value minus away
// value, positive favors the home side.
struct NetOutcome {
    TeamId home;
    TeamId away;
    double value = 0.0;
};

// One unordered pair and its two-fixture sum Y_{i,j} + Y_{j,i}.
struct PairSum {
    int i = 0;  // i < j always
    int j = 0;
    double sum = 0.0;
};

// Per-statistic collection of pair sums, lexicographically ordered by
// (i, j). Complete seasons carry n(n-1)/2 entries; in partial mode the
// pairs dropped for a missing mirror fixture are listed in `dropped`.
struct PairedOutcomeSet {
    int n = 0;
    std::vector<PairSum> pairs;
    std::vector<std::pair<int, int>> dropped;

    bool complete() const {
        return static_cast<long>(pairs.size()) ==
               static_cast<long>(n) * (n - 1) / 2;
    }
};

}  // namespace hfa
