#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treedisc/coloring.hpp"
#include "treedisc/discrepancy.hpp"
#include "treedisc/forest.hpp"
#include "treedisc/graph.hpp"

namespace treedisc {

// Sparse-regime knobs for the separation analysis. d is the cut budget and
// lambda the discrepancy target scale; both fall out of n, alpha and p.
struct PerturbParams {
    double alpha_min_deg = 0.0;
    double p = 0.0;
    double d = 0.0;       // p * alpha^2 * n^2 / 16
    double lambda = 0.0;  // c1 * alpha^2 / 32

    static PerturbParams derive(int n, double alpha, double p, double c1);
};

// Cut vertices U together with the vertex sets of the components that remain
// after their removal, each of which admits no further small cut.
struct Decomposition {
    std::vector<int> u;
    std::vector<std::vector<int>> parts;  // by size desc, then min label
};

// Peels small cuts off every component until each surviving part has no
// vertex cut of size <= d (parts that shrink to <= d+1 vertices stop, since
// the bound exceeds what a cut could even use there).
Decomposition d_connected_decomposition(const Graph& g, int d);

struct ConflictContext {
    std::vector<int> s1;                       // vi-vertices seeing the other side
    std::vector<std::pair<int, int>> gamma_edges;  // conflicts within s1
    std::vector<int> independent_set;          // conflict-free subset found
};

// Between two parts, picks vertices of the first with a private neighbor in
// the second: no two picked vertices share a neighbor across the divide. The
// matching pairs each picked vertex with one such private neighbor.
std::pair<ConflictContext, Matching> conflict_matching(
    const Graph& g, const std::vector<int>& vi, const std::vector<int>& vj);

// Minimum |S| such that G - S splits into two halves of equal vertex count
// (n - |S| even, each side possibly several components). Exhaustive; n <= 14.
int separation_number_exact(const Graph& g);

struct SeparationCertificate {
    bool valid = false;
    std::string reason;               // first failed condition when invalid
    double d = 0.0;
    std::vector<int> u;
    std::vector<std::vector<int>> parts;
    std::vector<int> matching_sizes;  // one per unordered part pair, i<j order
    int certified_bound = 0;          // separation number >= this when valid

    std::string to_json() const;
};

// Builds the decomposition at the derived cut budget and checks the size,
// count and pairwise-linkage conditions under which every balanced separator
// must contain at least ceil(d/2) vertices.
SeparationCertificate certify_separation_bound(const Graph& g,
                                               const PerturbParams& params);

// Two dense halves, each a circulant of spread ceil(alpha*n/2), plus random
// noise between everything, colored one way inside the first half and the
// other way everywhere else: a family on which no spanning tree can beat the
// certificate's bound by more than a constant factor.
std::pair<Graph, EdgeColoring> sharpness_instance(int n, double alpha,
                                                  double p,
                                                  std::uint64_t seed);

// Local search for a high-discrepancy spanning tree of a fixed graph: start
// from a random tree, then swap non-tree edges onto their tree cycles while
// |sum| strictly grows. The heuristic the sharpness family is played against.
DiscrepancyResult perturbed_discrepancy_tree(const Graph& h,
                                             const EdgeColoring& chi,
                                             const PerturbParams& params,
                                             std::uint64_t seed);

} // namespace treedisc
