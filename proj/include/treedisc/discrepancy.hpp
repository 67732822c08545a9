#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treedisc/coloring.hpp"
#include "treedisc/forest.hpp"
#include "treedisc/graph.hpp"
#include "treedisc/leafy.hpp"

namespace treedisc {

long long signed_color_sum(const SpanningForest& f, const EdgeColoring& chi);
long long signed_color_sum(const Tree& t, const EdgeColoring& chi);

// (signed sum, absolute value) in one call.
std::pair<long long, long long> discrepancy(const SpanningForest& f,
                                            const EdgeColoring& chi);
std::pair<long long, long long> discrepancy(const Tree& t,
                                            const EdgeColoring& chi);

// Pendant-edge machinery around a tree T and its inner tree I. M1 covers the
// leaves of T plus their neighbors, M2 the same for I; swaps confined to
// M1 union M2 can therefore never touch the same tree edge twice.
struct BoostContext {
    std::vector<int> m1;
    std::vector<int> m2;
    std::vector<Edge> e1;     // pendant edges of T, one color class
    std::vector<Edge> e2;     // pendant edges (of T or I) in the other color
    std::vector<int> v1;      // leaf endpoint of e1[i] at index i
    std::vector<int> v2;      // leaf endpoint of e2[i] at index i
    int e1_color = 0;         // the color all of e1 carries
    int case_tag = 0;         // 1: both colors rich in T; 2: one side padded from I
    bool feasible = false;
    std::string reason;       // set when infeasible
};

BoostContext build_boost_context(const Tree& t, const EdgeColoring& chi,
                                 double delta);

enum class BoostStatus {
    Ok,
    ContextInfeasible,   // pendant classes too thin for the requested delta
    NoUsefulSwap,        // matching empty or swaps would not raise |sum|
};

struct DiscrepancyResult {
    SpanningForest forest;
    long long signed_sum = 0;
    long long abs_discrepancy = 0;
    long long initial_signed_sum = 0;
    int majority_sign = 0;
    int leaf_count = 0;
    int swaps_applied = 0;
    double epsilon_achieved = 0.0;  // abs_discrepancy / n
    int case_tag = 0;
    BoostStatus status = BoostStatus::Ok;
};

struct BoostParams {
    double alpha = 0.15;   // leaf fraction the forest must keep
    double delta = 0.02;   // pendant class size, as a fraction of n
    LeafRunParams phase1;
    LeafRunParams phase2;
    // Master seed. The layer split, both leaf phases and every tie-break
    // derive from it; the seed fields inside phase1/phase2 are ignored.
    std::uint64_t seed = 0;
};

// Grows a leafy spanning forest of g, then swaps matched pendant edges into
// the majority color while the leaf budget alpha*n allows. Never throws on a
// thin instance; inspect status.
DiscrepancyResult boost_forest(const Graph& g, const EdgeColoring& chi,
                               const BoostParams& params);

// Connects a spanning forest into a spanning tree of g using the cheapest
// available connectors (lexicographic), exactly c(F)-1 of them.
Tree forest_to_tree(const Graph& g, const SpanningForest& f);

struct HighDiscResult {
    Tree tree;
    long long signed_sum = 0;
    long long abs_discrepancy = 0;
    long long majority_count = 0;  // edges of the winning color in the tree
    int connector_edges = 0;       // edges added to stitch the forest
    DiscrepancyResult forest_stage;
};

// Forest boost on g2, then stitch to a spanning tree of g1 union g2 and
// account the full coloring.
HighDiscResult high_disc_spanning_tree(const Graph& g1, const Graph& g2,
                                       const EdgeColoring& chi,
                                       const BoostParams& params);

} // namespace treedisc
