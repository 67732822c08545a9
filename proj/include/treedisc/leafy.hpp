#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treedisc/forest.hpp"
#include "treedisc/graph.hpp"
#include "treedisc/rng.hpp"

namespace treedisc {

// One leaf-producing rewiring. Removing u2-u* and adding u1-u2 turns u* into
// a leaf while u1 and u2 keep degree >= 2 and u2 stays internal, so the leaf
// count rises by exactly one.
struct ProducerMove {
    int u1 = -1;
    int u2 = -1;
    int u_star = -1;
};

struct LeafRunParams {
    double target_leaf_fraction = 0.3;
    // Sample budget, as a multiple of |V(t)|. Zero means: derive from the
    // gap to 1/3 (the fraction past which producers may dry up).
    double max_steps_factor = 0.0;
    std::uint64_t seed = 0;
};

double default_steps_factor(double target_leaf_fraction);

struct LeafTraceRow {
    std::int64_t step = 0;
    int leaf_count = 0;
    bool producer_applied = false;
};

// Uniform spanning-structure seed: randomized BFS tree of the component
// containing `root` (or of the whole graph when connected and root < 0).
Tree spanning_tree_arbitrary(const Graph& g, Rng& rng, int root = -1);

// Decide whether the graph edge e certifies a producer move in t, and if so
// which one. Both endpoint orderings are tried, smaller-label u1 first; the
// first ordering that works wins.
std::optional<ProducerMove> find_producer(const Graph& g, const Tree& t,
                                          const Edge& e);

Tree apply_producer(const Tree& t, const ProducerMove& mv);

// Repeatedly sample graph edges inside V(t) and apply any producer they
// certify, until the leaf fraction reaches the target or the budget runs
// out. Returns the improved tree; trace (if given) records leaf growth.
Tree leaf_increase(const Graph& g, const Tree& t, const LeafRunParams& params,
                   std::vector<LeafTraceRow>* trace = nullptr);

struct TwoPhaseResult {
    Tree tree;             // final tree, spanning the giant of g1
    int t1_leaf_count = 0; // leaves after phase one
    int t2_leaf_count = 0; // leaves of the reshaped inner tree
    int cover_count = 0;   // |L(T)| + |L(inner(T))| on the final tree
};

// Phase one grows leaves using g1 alone; phase two re-runs the engine on the
// inner tree of the result with g2 as the edge pool (the inner tree need not
// be a subgraph of g2), then reattaches the phase-one leaves where they were.
TwoPhaseResult two_phase_leafy_tree(const Graph& g1, const Graph& g2,
                                    const LeafRunParams& phase1,
                                    const LeafRunParams& phase2);

} // namespace treedisc
