#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "treedisc/edge_io.hpp"
#include "treedisc/forest.hpp"
#include "treedisc/graph.hpp"
#include "treedisc/rng.hpp"

using namespace treedisc;

namespace {

// Simple augmenting-path matcher, independent of the production one.
int matching_size_oracle(const Graph& g, const std::vector<int>& left,
                         const std::vector<int>& right) {
    std::set<int> right_set(right.begin(), right.end());
    std::vector<int> match_of(std::size_t(g.n()), -1);
    int size = 0;
    for (int u : left) {
        std::vector<char> visited(std::size_t(g.n()), 0);
        std::function<bool(int)> try_augment = [&](int v) {
            for (int w : g.neighbors(v)) {
                if (!right_set.count(w) || visited[std::size_t(w)]) continue;
                visited[std::size_t(w)] = 1;
                if (match_of[std::size_t(w)] < 0 ||
                    try_augment(match_of[std::size_t(w)])) {
                    match_of[std::size_t(w)] = v;
                    return true;
                }
            }
            return false;
        };
        if (try_augment(u)) ++size;
    }
    return size;
}

}  // namespace

TEST_CASE("edges canonicalize and reject loops") {
    CHECK(make_edge(3, 1) == Edge{1, 3});
    CHECK(make_edge(1, 3) == Edge{1, 3});
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("from_edges validates range and duplicates") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    Graph g = Graph::from_edges(3, {{2, 0}, {0, 1}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
    CHECK(g.neighbors(0) == std::vector<int>{1, 2});
    CHECK(g.degree(0) == 2);
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(1, 2));
}

TEST_CASE("gen_gnp degenerate probabilities") {
    Graph empty = gen_gnp({5, 0.0, 1});
    CHECK(empty.n() == 5);
    CHECK(empty.edge_count() == 0);

    Graph complete = gen_gnp({5, 1.0, 1});
    CHECK(complete.edge_count() == 10);
    CHECK(complete.is_complete());
}

TEST_CASE("gen_gnp edge count near the binomial mean") {
    int n = 10000;
    Graph g = gen_gnp({n, 2.0 / n, 7});
    double mean = (double(n) * (n - 1) / 2.0) * (2.0 / n);
    double sd = std::sqrt(mean * (1.0 - 2.0 / n));
    CHECK(std::abs(double(g.edge_count()) - mean) <= 3.0 * sd);
}

TEST_CASE("gen_gnp is deterministic in the seed") {
    Graph a = gen_gnp({100, 0.2, 42});
    Graph b = gen_gnp({100, 0.2, 42});
    Graph c = gen_gnp({100, 0.2, 43});
    CHECK(a.edges() == b.edges());
    CHECK(a.edges() != c.edges());
}

TEST_CASE("gen_gnm forced cases and exact counts") {
    CHECK(gen_gnm(4, 6, 0).is_complete());
    CHECK(gen_gnm(4, 0, 0).edge_count() == 0);
    CHECK(gen_gnm(6, 5, 3).edge_count() == 5);
    CHECK(gen_gnm(6, 5, 3).edges() == gen_gnm(6, 5, 3).edges());
    CHECK_THROWS_AS(gen_gnm(4, 7, 0), std::invalid_argument);
}

TEST_CASE("union_graphs merges without duplicates") {
    Graph path = Graph::from_edges(3, {{0, 1}});
    Graph tail = Graph::from_edges(3, {{1, 2}});
    Graph both = union_graphs(path, tail);
    CHECK(both.edges() == std::vector<Edge>{{0, 1}, {1, 2}});

    Graph empty(3);
    CHECK(union_graphs(path, empty).edges() == path.edges());
    CHECK(union_graphs(path, path).edges() == path.edges());
    CHECK_THROWS_AS(union_graphs(path, Graph(4)), std::invalid_argument);
}

TEST_CASE("connected_components orders by size then label") {
    // K3 on {0,1,2} next to K2 on {3,4}.
    Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{0, 1, 2});
    CHECK(comps[1] == std::vector<int>{3, 4});

    auto singles = connected_components(Graph(3));
    REQUIRE(singles.size() == 3);
    CHECK(singles[0] == std::vector<int>{0});

    // Equal sizes break the tie by smallest label.
    Graph tie = Graph::from_edges(4, {{2, 3}, {0, 1}});
    auto tied = connected_components(tie);
    CHECK(tied[0] == std::vector<int>{0, 1});
    CHECK(tied[1] == std::vector<int>{2, 3});
}

TEST_CASE("rho_fixed_point residuals and monotonicity") {
    double rho2 = rho_fixed_point(2.0, 1e-10);
    CHECK(rho2 == doctest::Approx(0.2032).epsilon(1e-3));
    CHECK(std::abs(rho2 - std::exp(-2.0 * (1.0 - rho2))) <= 1e-10);

    double rho10 = rho_fixed_point(10.0, 1e-10);
    CHECK(rho10 < 1e-4);
    CHECK(std::abs(rho10 - std::exp(-10.0 * (1.0 - rho10))) <= 1e-10);

    double prev = 1.0;
    for (double c : {2.0, 3.0, 5.0, 10.0}) {
        double r = rho_fixed_point(c);
        CHECK(r < prev);
        prev = r;
    }
    CHECK_THROWS_AS(rho_fixed_point(1.0), std::invalid_argument);
}

TEST_CASE("giant component tracks the branching-process share") {
    int n = 50000;
    for (double c : {2.0, 5.0}) {
        double expected = (1.0 - rho_fixed_point(c)) * n;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Graph g = gen_gnp({n, c / n, 900 + seed});
            auto comps = connected_components(g);
            double giant = double(comps.front().size());
            CHECK(std::abs(giant - expected) / expected <= 0.02);
        }
    }
}

TEST_CASE("degree_profile on star and path") {
    Tree star;
    star.host_n = 5;
    star.vertices = {0, 1, 2, 3, 4};
    star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    auto profile = degree_profile(star);
    CHECK(profile.leaf_count == 4);
    CHECK(profile.classes.at(1) == std::vector<int>{1, 2, 3, 4});
    CHECK(profile.classes.at(4) == std::vector<int>{0});

    Tree path;
    path.host_n = 6;
    path.vertices = {0, 1, 2, 3, 4, 5};
    path.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
    auto pp = degree_profile(path);
    CHECK(pp.leaf_count == 2);
    CHECK(pp.classes.at(1).size() == 2);
    CHECK(pp.classes.at(2).size() == 4);
}

TEST_CASE("degree-class inequalities hold on random trees") {
    // Random spanning trees of random connected graphs; the two tree
    // inequalities from the leaf-counting argument must hold on each.
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        int n = 2 + int(rng.next_below(40));
        Graph g = gen_gnp({n, 0.5, rng.next_u64()});
        auto comps = connected_components(g);
        const auto& comp = comps.front();
        if (comp.size() < 2) continue;

        // Prim-style random tree over the first component.
        std::vector<Edge> tree_edges;
        std::vector<int> in_tree;
        std::vector<char> used(std::size_t(n), 0);
        in_tree.push_back(comp[0]);
        used[std::size_t(comp[0])] = 1;
        while (tree_edges.size() + 1 < comp.size()) {
            bool grown = false;
            for (int u : in_tree) {
                for (int w : g.neighbors(u)) {
                    if (used[std::size_t(w)]) continue;
                    used[std::size_t(w)] = 1;
                    in_tree.push_back(w);
                    tree_edges.push_back(make_edge(u, w));
                    grown = true;
                    break;
                }
                if (grown) break;
            }
            REQUIRE(grown);
        }
        Tree t;
        t.host_n = n;
        t.vertices = std::vector<int>(comp.begin(), comp.end());
        std::sort(tree_edges.begin(), tree_edges.end());
        t.edges = tree_edges;
        validate_tree(t);

        auto profile = degree_profile(t);
        long long l1 = profile.classes.count(1) ? (long long)(profile.classes.at(1).size()) : 0;
        long long l2 = profile.classes.count(2) ? (long long)(profile.classes.at(2).size()) : 0;
        long long total = 0;
        long long excess = 0;
        long long high = 0;
        for (const auto& [k, verts] : profile.classes) {
            total += (long long)(verts.size());
            if (k >= 3) {
                excess += (long long)(k - 2) * (long long)(verts.size());
                high += (long long)(verts.size());
            }
        }
        CHECK(total == (long long)(t.size()));
        CHECK(excess < l1);
        CHECK(high < l1);
        CHECK(l2 + 2 * l1 > (long long)(t.size()));
    }
}

TEST_CASE("inner_tree examples") {
    Tree path;
    path.host_n = 6;
    path.vertices = {0, 1, 2, 3, 4, 5};
    path.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
    Tree inner = inner_tree(path);
    CHECK(inner.vertices == std::vector<int>{1, 2, 3, 4});
    CHECK(inner.edges == std::vector<Edge>{{1, 2}, {2, 3}, {3, 4}});

    Tree star;
    star.host_n = 5;
    star.vertices = {0, 1, 2, 3, 4};
    star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    Tree center = inner_tree(star);
    CHECK(center.vertices == std::vector<int>{0});
    CHECK(center.edges.empty());

    // Spider: center 0, legs 0-1-4, 0-2-5, 0-3-6.
    Tree spider;
    spider.host_n = 7;
    spider.vertices = {0, 1, 2, 3, 4, 5, 6};
    spider.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}};
    Tree hub = inner_tree(spider);
    CHECK(hub.vertices == std::vector<int>{0, 1, 2, 3});
    CHECK(hub.edges == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});

    Tree tiny;
    tiny.host_n = 2;
    tiny.vertices = {0, 1};
    tiny.edges = {{0, 1}};
    CHECK_THROWS_AS(inner_tree(tiny), std::invalid_argument);
}

TEST_CASE("max_bipartite_matching basic cases") {
    // Complete bipartite between {0,1,2} and {3,4,5}.
    std::vector<Edge> cross;
    for (int u = 0; u < 3; ++u)
        for (int v = 3; v < 6; ++v) cross.push_back(make_edge(u, v));
    Graph kb = Graph::from_edges(6, cross);
    CHECK(max_bipartite_matching(kb, {0, 1, 2}, {3, 4, 5}).size() == 3);

    Graph inside = Graph::from_edges(6, {{0, 1}, {3, 4}});
    CHECK(max_bipartite_matching(inside, {0, 1, 2}, {3, 4, 5}).size() == 0);

    CHECK_THROWS_AS(max_bipartite_matching(kb, {0, 1}, {1, 2}),
                    std::invalid_argument);
}

TEST_CASE("matching is maximum against an independent matcher") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        int n = 20 + int(rng.next_below(180));
        Graph g = gen_gnp({n, 3.0 / n, rng.next_u64()});
        std::vector<int> order(std::size_t(n), 0);
        for (int i = 0; i < n; ++i) order[std::size_t(i)] = i;
        rng.shuffle(order.begin(), order.end());
        int k = n / 4;
        std::vector<int> left(order.begin(), order.begin() + k);
        std::vector<int> right(order.begin() + k, order.begin() + 2 * k);
        Matching m = max_bipartite_matching(g, left, right);
        CHECK(int(m.size()) == matching_size_oracle(g, left, right));

        std::set<int> touched;
        for (const Edge& e : m.pairs) {
            CHECK(g.has_edge(e.first, e.second));
            CHECK(touched.insert(e.first).second);
            CHECK(touched.insert(e.second).second);
        }
    }
}

TEST_CASE("generated graphs satisfy structural invariants") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        int n = 2 + int(rng.next_below(50));
        Graph g = gen_gnp({n, 0.3, rng.next_u64()});
        std::set<Edge> seen;
        for (const Edge& e : g.edges()) {
            CHECK(e.first < e.second);
            CHECK(e.second < n);
            CHECK(e.first >= 0);
            CHECK(seen.insert(e).second);
        }
        for (int v = 0; v < n; ++v)
            for (int w : g.neighbors(v)) {
                CHECK(g.has_edge(v, w));
                auto& back = g.neighbors(w);
                CHECK(std::find(back.begin(), back.end(), v) != back.end());
            }
    }
}

TEST_CASE("edge list round trip") {
    std::istringstream in("# fixture\nn 3\n0 1 +1\n1 2 -1\n");
    EdgeListFile f = load_edge_list(in);
    CHECK(f.graph.n() == 3);
    CHECK(f.graph.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    REQUIRE(f.coloring.has_value());
    CHECK(f.coloring->color(0, 1) == 1);
    CHECK(f.coloring->color(1, 2) == -1);

    std::ostringstream first;
    save_edge_list(first, f.graph, &*f.coloring);
    std::istringstream again(first.str());
    EdgeListFile g = load_edge_list(again);
    std::ostringstream second;
    save_edge_list(second, g.graph, &*g.coloring);
    CHECK(first.str() == second.str());
}

TEST_CASE("edge list rejects malformed input") {
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(load_edge_list(in), std::runtime_error);
    };
    reject("0 1\n");                    // missing header
    reject("n 3\n0 0\n");               // self-loop
    reject("n 3\n0 5\n");               // out of range
    reject("n 3\n0 1\n0 1\n");          // duplicate
    reject("n 3\n0 1 +1\n1 2\n");       // mixed colored and plain
    reject("n 3\n0 1 2\n");             // bad color token
    reject("n\n");                      // header without a count
}
