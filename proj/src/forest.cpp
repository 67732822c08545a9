#include "treedisc/forest.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "dsu.hpp"

namespace treedisc {

namespace {

// Degree of every vertex in `verts` under `edges`; endpoints outside the set
// are a contract violation the callers below have already ruled out.
std::unordered_map<int, int> degree_map(const std::vector<int>& verts,
                                        const std::vector<Edge>& edges) {
    std::unordered_map<int, int> deg;
    deg.reserve(verts.size() * 2);
    for (int v : verts) deg[v] = 0;
    for (const auto& e : edges) {
        ++deg[e.first];
        ++deg[e.second];
    }
    return deg;
}

} // namespace

DegreeProfile degree_profile(const Tree& t) {
    DegreeProfile out;
    auto deg = degree_map(t.vertices, t.edges);
    for (int v : t.vertices) out.classes[deg[v]].push_back(v);
    for (auto& [d, verts] : out.classes) std::sort(verts.begin(), verts.end());
    auto it = out.classes.find(1);
    out.leaf_count = it == out.classes.end() ? 0 : int(it->second.size());
    return out;
}

DegreeProfile degree_profile(const SpanningForest& f) {
    DegreeProfile out;
    std::vector<int> deg(std::size_t(f.host_n), 0);
    for (const auto& e : f.edges) {
        ++deg[std::size_t(e.first)];
        ++deg[std::size_t(e.second)];
    }
    for (int v = 0; v < f.host_n; ++v) out.classes[deg[std::size_t(v)]].push_back(v);
    auto it = out.classes.find(1);
    out.leaf_count = it == out.classes.end() ? 0 : int(it->second.size());
    return out;
}

std::vector<int> tree_leaves(const Tree& t) {
    auto deg = degree_map(t.vertices, t.edges);
    std::vector<int> leaves;
    for (int v : t.vertices)
        if (deg[v] == 1) leaves.push_back(v);
    return leaves;
}

int tree_leaf_count(const Tree& t) { return int(tree_leaves(t).size()); }

int forest_leaf_count(const SpanningForest& f) {
    std::vector<int> deg(std::size_t(f.host_n), 0);
    for (const auto& e : f.edges) {
        ++deg[std::size_t(e.first)];
        ++deg[std::size_t(e.second)];
    }
    return int(std::count(deg.begin(), deg.end(), 1));
}

Tree inner_tree(const Tree& t) {
    if (t.size() < 3)
        throw std::invalid_argument("inner tree undefined below three vertices");
    auto deg = degree_map(t.vertices, t.edges);
    Tree inner;
    inner.host_n = t.host_n;
    for (int v : t.vertices)
        if (deg[v] >= 2) inner.vertices.push_back(v);
    for (const auto& e : t.edges)
        if (deg[e.first] >= 2 && deg[e.second] >= 2) inner.edges.push_back(e);
    return inner;
}

void validate_tree(const Tree& t) {
    if (t.host_n < 0) throw std::invalid_argument("tree host order negative");
    if (t.vertices.empty()) throw std::invalid_argument("tree has no vertices");
    if (!std::is_sorted(t.vertices.begin(), t.vertices.end()))
        throw std::invalid_argument("tree vertices not sorted");
    if (std::adjacent_find(t.vertices.begin(), t.vertices.end()) != t.vertices.end())
        throw std::invalid_argument("tree vertices not distinct");
    if (t.vertices.front() < 0 || t.vertices.back() >= t.host_n)
        throw std::invalid_argument("tree vertex out of host range");
    if (t.edges.size() + 1 != t.vertices.size())
        throw std::invalid_argument("tree edge count must be order minus one");

    auto inside = [&](int v) {
        return std::binary_search(t.vertices.begin(), t.vertices.end(), v);
    };
    Dsu dsu(t.host_n);
    for (const auto& e : t.edges) {
        if (e.first >= e.second)
            throw std::invalid_argument("tree edge not canonical");
        if (!inside(e.first) || !inside(e.second))
            throw std::invalid_argument("tree edge leaves the vertex set");
        if (!dsu.unite(e.first, e.second))
            throw std::invalid_argument("tree contains a cycle");
    }
    // Acyclic with |V|-1 edges on |V| vertices forces connectivity.
}

void validate_tree_in_graph(const Tree& t, const Graph& g) {
    validate_tree(t);
    if (t.host_n != g.n())
        throw std::invalid_argument("tree host order differs from graph");
    for (const auto& e : t.edges)
        if (!g.has_edge(e.first, e.second))
            throw std::invalid_argument("tree edge absent from graph");
}

void validate_spanning_forest(const SpanningForest& f, const Graph& g) {
    if (f.host_n != g.n())
        throw std::invalid_argument("forest host order differs from graph");
    if (!std::is_sorted(f.edges.begin(), f.edges.end()))
        throw std::invalid_argument("forest edges not sorted");
    if (std::adjacent_find(f.edges.begin(), f.edges.end()) != f.edges.end())
        throw std::invalid_argument("forest edges not distinct");
    Dsu dsu(g.n());
    for (const auto& e : f.edges) {
        if (!g.has_edge(e.first, e.second))
            throw std::invalid_argument("forest edge absent from graph");
        if (!dsu.unite(e.first, e.second))
            throw std::invalid_argument("forest contains a cycle");
    }
    // A maximal spanning forest has exactly as many trees as the graph has
    // components; fewer edges would leave some component split.
    if (f.component_count() != int(connected_components(g).size()))
        throw std::invalid_argument("forest does not span every component");
}

SpanningForest forest_from_trees(int host_n, const std::vector<Tree>& trees) {
    SpanningForest f;
    f.host_n = host_n;
    std::vector<char> used(std::size_t(std::max(host_n, 0)), 0);
    for (const auto& t : trees) {
        validate_tree(t);
        if (t.host_n != host_n)
            throw std::invalid_argument("tree host order differs from forest");
        for (int v : t.vertices) {
            if (used[std::size_t(v)])
                throw std::invalid_argument("trees overlap on a vertex");
            used[std::size_t(v)] = 1;
        }
        f.edges.insert(f.edges.end(), t.edges.begin(), t.edges.end());
    }
    std::sort(f.edges.begin(), f.edges.end());
    return f;
}

std::vector<int> forest_component_roots(const SpanningForest& f) {
    Dsu dsu(f.host_n);
    for (const auto& e : f.edges) dsu.unite(e.first, e.second);
    std::vector<int> root(std::size_t(f.host_n), -1);
    for (int v = 0; v < f.host_n; ++v) {
        int r = dsu.find(v);
        if (root[std::size_t(r)] < 0) root[std::size_t(r)] = v;
    }
    std::vector<int> out;
    for (int v = 0; v < f.host_n; ++v)
        if (root[std::size_t(v)] >= 0) out.push_back(root[std::size_t(v)]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace treedisc
