#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "treedisc/coloring.hpp"
#include "treedisc/forest.hpp"
#include "treedisc/graph.hpp"

namespace treedisc {

// Kirchhoff count, exact over __int128 via fraction-free elimination.
// Guards against overflow and against graphs whose count would exceed the
// budget a caller could enumerate anyway.
unsigned long long spanning_tree_count(const Graph& g);

// Visits every spanning tree of a connected graph once, as a sorted edge
// vector. Throws if the count exceeds `budget`.
void enumerate_spanning_trees(const Graph& g,
                              const std::function<void(const std::vector<Edge>&)>& visit,
                              unsigned long long budget = 1000000);

struct ForestOptimum {
    long long best_abs_sum = 0;
    int best_leaf_count = 0;  // leaves of the witness
    SpanningForest witness;
};

// Exact maximum |signed sum| over all spanning forests (one spanning tree
// per component) carrying at least alpha_leaf_min * n leaves in total, by
// dynamic programming over per-component tree sets.
ForestOptimum max_discrepancy_forest_bruteforce(const Graph& g,
                                                const EdgeColoring& chi,
                                                double alpha_leaf_min);

int max_leaf_tree_bruteforce(const Graph& g);

enum class AdversaryKind {
    UniformRandom,
    BalancedLocal,
    CutColoring,
    AdaptiveRecolor,
};

struct AdversarySpec {
    AdversaryKind kind = AdversaryKind::UniformRandom;
    std::uint64_t seed = 0;
    int rounds = 3;       // AdaptiveRecolor only
    double delta = 0.02;  // AdaptiveRecolor probes the builder with these
    double alpha = 0.15;
};

// Colorings an algorithm under test should be exercised against. The
// adaptive one actually runs the forest booster and recolors against its
// output, so it is as hostile as this codebase knows how to be.
EdgeColoring make_coloring(const Graph& g, const AdversarySpec& spec);

AdversaryKind parse_adversary(const std::string& name);
std::string adversary_name(AdversaryKind kind);

} // namespace treedisc
