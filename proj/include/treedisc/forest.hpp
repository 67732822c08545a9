#pragma once

#include <map>
#include <vector>

#include "treedisc/graph.hpp"

namespace treedisc {

// Tree on a subset of the host's vertices (|edges| = |vertices| - 1).
struct Tree {
    int host_n = 0;
    std::vector<int> vertices;  // sorted ascending
    std::vector<Edge> edges;    // canonical, sorted

    std::size_t size() const { return vertices.size(); }
};

// Acyclic subgraph covering every host vertex with one tree per component of
// the graph it was built from (isolated vertices count as trees).
struct SpanningForest {
    int host_n = 0;
    std::vector<Edge> edges;  // canonical, sorted

    int component_count() const { return host_n - int(edges.size()); }
};

struct DegreeProfile {
    // degree k -> vertices of that degree, ascending. Classes partition the
    // profiled vertex set; leaf_count == |class 1|.
    std::map<int, std::vector<int>> classes;
    int leaf_count = 0;
};

DegreeProfile degree_profile(const SpanningForest& f);
DegreeProfile degree_profile(const Tree& t);

std::vector<int> tree_leaves(const Tree& t);
int tree_leaf_count(const Tree& t);
int forest_leaf_count(const SpanningForest& f);

// Subtree induced on the non-leaves; total in a tree. Rejects trees with
// fewer than three vertices, where the notion degenerates.
Tree inner_tree(const Tree& t);

// Structural checks: throw std::invalid_argument on violation.
void validate_tree(const Tree& t);
void validate_tree_in_graph(const Tree& t, const Graph& g);
void validate_spanning_forest(const SpanningForest& f, const Graph& g);

SpanningForest forest_from_trees(int host_n, const std::vector<Tree>& trees);

// Smallest vertex of each forest component, one per tree, ascending.
std::vector<int> forest_component_roots(const SpanningForest& f);

} // namespace treedisc
