#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treedisc/graph.hpp"
#include "treedisc/oracles.hpp"

namespace treedisc {

enum class Mode {
    Leaves,     // single-graph leaf growth
    TwoPhase,   // union-model leaf growth
    Boost,      // forest discrepancy against an adversary coloring
    Main1,      // full tree pipeline on a two-layer union
    Perturb,    // separation certificate on a noisy clique union
    Sharpness,  // tree search against the hard two-half family
    OracleCheck // randomized parts against exact oracles, small n
};

Mode parse_mode(const std::string& s);
std::string mode_name(Mode m);

// Edge density, given in whichever form the caller prefers; resolve() turns
// it into a probability for a given n.
struct PSpec {
    enum class Form { Probability, COverN, FOverN2 } form = Form::Probability;
    double value = 0.0;

    double resolve(int n) const;
};

struct ExperimentConfig {
    Mode mode = Mode::Leaves;
    int n = 1000;
    PSpec p{};
    std::optional<PSpec> p2;  // second layer; defaults to p
    double alpha = 0.15;
    double delta = 0.02;
    double target_leaf_fraction = 0.3;
    double c1 = 50.0;
    AdversarySpec adversary{};
    int trials = 1;
    std::uint64_t seed = 1;  // trial k runs on seed + k
    int threads = 1;
    bool timing = false;      // off: runtimeMs column stays 0 for byte-stable output
    std::string graph_in;     // fixed instance instead of a random one
    std::string coloring_in;  // fixed coloring; needs graph_in
};

// One result table: named columns, one preformatted cell per value, one row
// per trial in trial order regardless of how many threads produced them.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    // Fraction of trials meeting the mode's target; rows are kept even when
    // they miss it.
    double success_fraction = 0.0;
};

ResultTable run_experiment(const ExperimentConfig& cfg);

struct ColumnSummary {
    double mean = 0.0;
    double stddev = 0.0;  // population form
    double min = 0.0;
    double max = 0.0;
};

// Stats over every column whose cells all parse as numbers. Text columns
// (adversary names, reasons) drop out.
std::map<std::string, ColumnSummary> summarize(const ResultTable& table);

// csv: header row, then data, then summary as trailing '#' comment lines.
// json: {"columns", "rows", "summary"} with stable key order.
void write_table(std::ostream& out, const ResultTable& table,
                 const std::string& format);

} // namespace treedisc
