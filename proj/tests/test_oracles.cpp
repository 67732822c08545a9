#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "treedisc/discrepancy.hpp"
#include "treedisc/forest.hpp"
#include "treedisc/graph.hpp"
#include "treedisc/oracles.hpp"
#include "treedisc/rng.hpp"

using namespace treedisc;

namespace {

Graph cycle(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
    return Graph::from_edges(n, edges);
}

Graph clique(int n) { return gen_gnp({n, 1.0, 0}); }

}  // namespace

TEST_CASE("spanning tree counts on closed forms") {
    CHECK(spanning_tree_count(cycle(4)) == 4);
    CHECK(spanning_tree_count(clique(4)) == 16);
    CHECK(spanning_tree_count(clique(5)) == 125);
    Graph path = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(spanning_tree_count(path) == 1);
    Graph split = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(spanning_tree_count(split) == 0);
    CHECK_THROWS_AS(spanning_tree_count(Graph(17)), std::invalid_argument);
}

TEST_CASE("enumeration lists every spanning tree exactly once") {
    std::set<std::vector<Edge>> seen;
    enumerate_spanning_trees(cycle(4), [&](const std::vector<Edge>& tree) {
        CHECK(tree.size() == 3);
        Tree t;
        t.host_n = 4;
        t.vertices = {0, 1, 2, 3};
        t.edges = tree;
        validate_tree(t);
        CHECK(seen.insert(tree).second);
    });
    CHECK(seen.size() == 4);

    std::size_t kfour = 0;
    enumerate_spanning_trees(clique(4), [&](const std::vector<Edge>&) { ++kfour; });
    CHECK(kfour == 16);

    CHECK_THROWS_AS(
        enumerate_spanning_trees(clique(4), [](const std::vector<Edge>&) {}, 10),
        std::runtime_error);
    Graph split = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(
        enumerate_spanning_trees(split, [](const std::vector<Edge>&) {}),
        std::invalid_argument);
}

TEST_CASE("enumeration count matches the determinant count") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        int n = 4 + int(rng.next_below(6));
        Graph g = gen_gnp({n, 0.55, rng.next_u64()});
        if (connected_components(g).size() != 1) continue;
        unsigned long long listed = 0;
        enumerate_spanning_trees(
            g, [&](const std::vector<Edge>&) { ++listed; }, 100000000ULL);
        CHECK(listed == spanning_tree_count(g));
    }
}

TEST_CASE("forest brute force on a four-cycle with a split coloring") {
    Graph g = cycle(4);
    EdgeColoring chi;
    chi.set(0, 1, 1);
    chi.set(1, 2, 1);
    chi.set(2, 3, -1);
    chi.set(0, 3, -1);
    // Every spanning tree drops one edge and keeps a 2-vs-1 color split.
    ForestOptimum opt = max_discrepancy_forest_bruteforce(g, chi, 0.0);
    CHECK(opt.best_abs_sum == 1);
    CHECK(signed_color_sum(opt.witness, chi) == 1);
}

TEST_CASE("forest brute force is exact on monochromatic colorings") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = gen_gnp({9, 0.4, seed});
        auto comps = connected_components(g);
        EdgeColoring chi;
        for (const Edge& e : g.edges()) chi.set(e.first, e.second, -1);
        if (g.edge_count() == 0) continue;
        ForestOptimum opt = max_discrepancy_forest_bruteforce(g, chi, 0.0);
        CHECK(opt.best_abs_sum == (long long)(g.n() - comps.size()));
        validate_spanning_forest(opt.witness, g);
        CHECK(forest_leaf_count(opt.witness) == opt.best_leaf_count);
    }
}

TEST_CASE("forest brute force is invariant under a global color flip") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Rng rng(seed);
        Graph g = gen_gnp({8, 0.5, rng.next_u64()});
        if (g.edge_count() == 0) continue;
        EdgeColoring chi, flipped;
        Rng colors = rng.split(1);
        for (const Edge& e : g.edges()) {
            int c = colors.next_bool() ? 1 : -1;
            chi.set(e.first, e.second, c);
            flipped.set(e.first, e.second, -c);
        }
        ForestOptimum a = max_discrepancy_forest_bruteforce(g, chi, 0.2);
        ForestOptimum b = max_discrepancy_forest_bruteforce(g, flipped, 0.2);
        CHECK(a.best_abs_sum == b.best_abs_sum);
        CHECK(std::llabs(signed_color_sum(a.witness, chi)) == a.best_abs_sum);
        CHECK(forest_leaf_count(a.witness) >=
              (long long)(std::ceil(0.2 * g.n() - 1e-9)));
    }
}

TEST_CASE("forest brute force rejects unreachable leaf floors") {
    Graph path = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    EdgeColoring chi;
    for (const Edge& e : path.edges()) chi.set(e.first, e.second, 1);
    CHECK_THROWS_AS(max_discrepancy_forest_bruteforce(path, chi, 0.9),
                    std::runtime_error);
}

TEST_CASE("maximum leaf counts by enumeration") {
    CHECK(max_leaf_tree_bruteforce(clique(4)) == 3);
    Graph path = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(max_leaf_tree_bruteforce(path) == 2);
    // Wheel on 7 vertices: the hub star leaves the whole rim pendant.
    std::vector<Edge> edges;
    for (int v = 1; v <= 6; ++v) {
        edges.push_back(make_edge(0, v));
        edges.push_back(make_edge(v, v == 6 ? 1 : v + 1));
    }
    CHECK(max_leaf_tree_bruteforce(Graph::from_edges(7, edges)) == 6);
}

TEST_CASE("uniform adversary is deterministic and covers the edge set") {
    Graph g = gen_gnp({40, 0.2, 7});
    AdversarySpec spec;
    spec.seed = 99;
    EdgeColoring a = make_coloring(g, spec);
    EdgeColoring b = make_coloring(g, spec);
    CHECK(a.size() == g.edge_count());
    int plus = 0;
    for (const Edge& e : g.edges()) {
        CHECK(a.color(e) == b.color(e));
        if (a.color(e) == 1) ++plus;
    }
    CHECK(plus > 0);
    CHECK(plus < int(g.edge_count()));
}

TEST_CASE("balanced local adversary zeroes even cycles") {
    Graph g = cycle(6);
    AdversarySpec spec;
    spec.kind = AdversaryKind::BalancedLocal;
    EdgeColoring chi = make_coloring(g, spec);
    std::vector<int> drift(6, 0);
    for (const Edge& e : g.edges()) {
        drift[std::size_t(e.first)] += chi.color(e);
        drift[std::size_t(e.second)] += chi.color(e);
    }
    for (int v = 0; v < 6; ++v) CHECK(drift[std::size_t(v)] == 0);
}

TEST_CASE("cut adversary colors by the half split") {
    Graph g = gen_gnp({31, 0.3, 5});
    AdversarySpec spec;
    spec.kind = AdversaryKind::CutColoring;
    EdgeColoring chi = make_coloring(g, spec);
    for (const Edge& e : g.edges())
        CHECK(chi.color(e) == (e.second < 16 ? 1 : -1));
}

TEST_CASE("adaptive adversary validates rounds and stays deterministic") {
    Graph g = gen_gnp({120, 0.1, 11});
    AdversarySpec spec;
    spec.kind = AdversaryKind::AdaptiveRecolor;
    spec.seed = 3;
    spec.rounds = 0;
    CHECK_THROWS_AS(make_coloring(g, spec), std::invalid_argument);
    spec.rounds = 3;
    EdgeColoring a = make_coloring(g, spec);
    EdgeColoring b = make_coloring(g, spec);
    CHECK(a.size() == g.edge_count());
    for (const Edge& e : g.edges()) CHECK(a.color(e) == b.color(e));
}

TEST_CASE("adversary names round-trip") {
    for (AdversaryKind kind :
         {AdversaryKind::UniformRandom, AdversaryKind::BalancedLocal,
          AdversaryKind::CutColoring, AdversaryKind::AdaptiveRecolor})
        CHECK(parse_adversary(adversary_name(kind)) == kind);
    CHECK_THROWS_AS(parse_adversary("colorful"), std::invalid_argument);
}
