#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace treedisc {

// Undirected edge, canonical form first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

inline std::uint64_t edge_key(const Edge& e) {
    return (std::uint64_t(std::uint32_t(e.first)) << 32) | std::uint32_t(e.second);
}

// Simple undirected graph on vertices 0..n-1. No loops, no parallel edges.
// Immutable once built; generators construct via from_edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    // Canonicalizes, sorts, and validates the edge list (range, loops, dups).
    static Graph from_edges(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const;
    bool has_edge(int u, int v) const;
    bool is_complete() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;            // sorted, canonical
    std::vector<std::vector<int>> adj_;  // each list sorted ascending
};

struct GnpParams {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

// Binomial random graph via geometric edge skipping; O(n + m) expected.
Graph gen_gnp(const GnpParams& params);

// Uniform graph with exactly m edges (Floyd sampling over the pair space).
Graph gen_gnm(int n, std::uint64_t m, std::uint64_t seed);

// Edge union of two graphs on the same vertex set.
Graph union_graphs(const Graph& a, const Graph& b);

// Components sorted by decreasing size, ties by smallest contained label;
// vertices inside each component ascending.
std::vector<std::vector<int>> connected_components(const Graph& g);

// Unique root in (0,1) of rho = exp(-c * (1 - rho)), c > 1, by bisection.
// The survivor share of a mean-c branching process; (1-rho)*n predicts the
// giant component size of a random graph with mean degree c.
double rho_fixed_point(double c, double tol = 1e-12);

struct Matching {
    std::vector<Edge> pairs;  // canonical, sorted
    std::size_t size() const { return pairs.size(); }
};

// Maximum matching between two disjoint vertex sets using only graph edges
// with one endpoint in each set (Hopcroft-Karp). Deterministic for a given
// input order.
Matching max_bipartite_matching(const Graph& g,
                                const std::vector<int>& left,
                                const std::vector<int>& right);

} // namespace treedisc
