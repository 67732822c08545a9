#include "treedisc/connectivity.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>

namespace treedisc {

namespace {

struct Induced {
    Graph graph;
    std::vector<int> label;  // new index -> original vertex
};

Induced induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    Induced out;
    out.label = keep;
    std::vector<int> index(std::size_t(g.n()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        index[std::size_t(keep[i])] = int(i);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        int a = index[std::size_t(e.first)], b = index[std::size_t(e.second)];
        if (a >= 0 && b >= 0) edges.push_back(make_edge(a, b));
    }
    out.graph = Graph::from_edges(int(keep.size()), std::move(edges));
    return out;
}

// Unit-capacity flow on the vertex-split digraph: node 2x is the entry side
// of x, node 2x+1 the exit, joined by a capacity-1 arc. A max flow from one
// exit to another entry equals the number of internally disjoint paths.
struct SplitFlow {
    struct Arc {
        int to;
        int cap;
    };
    std::vector<Arc> arcs;
    std::vector<int> initial_cap;
    std::vector<std::vector<int>> at;
    int node_count;

    explicit SplitFlow(const Graph& g) : node_count(2 * g.n()) {
        at.assign(std::size_t(node_count), {});
        const int big = g.n() + 1;
        for (int x = 0; x < g.n(); ++x) add(2 * x, 2 * x + 1, 1);
        for (const auto& e : g.edges()) {
            add(2 * e.first + 1, 2 * e.second, big);
            add(2 * e.second + 1, 2 * e.first, big);
        }
        initial_cap.reserve(arcs.size());
        for (const auto& a : arcs) initial_cap.push_back(a.cap);
    }

    void add(int a, int b, int cap) {
        at[std::size_t(a)].push_back(int(arcs.size()));
        arcs.push_back({b, cap});
        at[std::size_t(b)].push_back(int(arcs.size()));
        arcs.push_back({a, 0});
    }

    void reset() {
        for (std::size_t i = 0; i < arcs.size(); ++i) arcs[i].cap = initial_cap[i];
    }

    // Augments one unit at a time; gives up once the flow exceeds `limit`
    // and reports limit + 1, since the exact value no longer matters.
    int maxflow_upto(int source, int sink, int limit) {
        int flow = 0;
        std::vector<int> via(std::size_t(node_count), -1);
        while (flow <= limit) {
            std::fill(via.begin(), via.end(), -1);
            via[std::size_t(source)] = -2;
            std::queue<int> q;
            q.push(source);
            while (!q.empty() && via[std::size_t(sink)] == -1) {
                int u = q.front();
                q.pop();
                for (int idx : at[std::size_t(u)]) {
                    if (arcs[std::size_t(idx)].cap <= 0) continue;
                    int w = arcs[std::size_t(idx)].to;
                    if (via[std::size_t(w)] != -1) continue;
                    via[std::size_t(w)] = idx;
                    q.push(w);
                }
            }
            if (via[std::size_t(sink)] == -1) return flow;
            int bottleneck = node_count;
            for (int u = sink; u != source;) {
                int idx = via[std::size_t(u)];
                bottleneck = std::min(bottleneck, arcs[std::size_t(idx)].cap);
                u = arcs[std::size_t(idx ^ 1)].to;
            }
            for (int u = sink; u != source;) {
                int idx = via[std::size_t(u)];
                arcs[std::size_t(idx)].cap -= bottleneck;
                arcs[std::size_t(idx ^ 1)].cap += bottleneck;
                u = arcs[std::size_t(idx ^ 1)].to;
            }
            flow += bottleneck;
        }
        return limit + 1;
    }

    // After a completed max flow: vertices whose entry is residually
    // reachable from the source while the exit is not form a minimum cut.
    std::vector<int> cut_vertices(int source) const {
        std::vector<char> reach(std::size_t(node_count), 0);
        std::queue<int> q;
        reach[std::size_t(source)] = 1;
        q.push(source);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int idx : at[std::size_t(u)]) {
                if (arcs[std::size_t(idx)].cap <= 0) continue;
                int w = arcs[std::size_t(idx)].to;
                if (!reach[std::size_t(w)]) {
                    reach[std::size_t(w)] = 1;
                    q.push(w);
                }
            }
        }
        std::vector<int> cut;
        for (int x = 0; x * 2 < node_count; ++x)
            if (reach[std::size_t(2 * x)] && !reach[std::size_t(2 * x + 1)])
                cut.push_back(x);
        return cut;
    }
};

// Bit rows for constant-ish time common-neighborhood counts.
struct NeighborBits {
    int words;
    std::vector<std::uint64_t> bits;

    explicit NeighborBits(const Graph& g) : words((g.n() + 63) / 64) {
        bits.assign(std::size_t(g.n()) * std::size_t(words), 0);
        for (const auto& e : g.edges()) {
            set(e.first, e.second);
            set(e.second, e.first);
        }
    }
    void set(int v, int w) {
        bits[std::size_t(v) * std::size_t(words) + std::size_t(w / 64)] |=
            std::uint64_t(1) << (w % 64);
    }
    int common(int v, int w) const {
        const std::uint64_t* a = &bits[std::size_t(v) * std::size_t(words)];
        const std::uint64_t* b = &bits[std::size_t(w) * std::size_t(words)];
        int count = 0;
        for (int i = 0; i < words; ++i) count += __builtin_popcountll(a[i] & b[i]);
        return count;
    }
};

// Vertex-disjoint short paths between two non-adjacent vertices: common
// neighbors give length-2 paths, and a greedy matching between the leftover
// private neighborhoods adds length-3 ones. Every path needs an internal
// vertex in any separator, so the total lower-bounds the cut size. Counting
// stops once the bound clears `enough`; the caller only needs that much.
int disjoint_path_lower_bound(const Graph& g, const NeighborBits& nb, int s,
                              int t, int enough) {
    int paths = nb.common(s, t);
    if (paths > enough) return paths;
    std::vector<char> used(std::size_t(g.n()), 0);
    for (int x : g.neighbors(s))
        if (g.has_edge(x, t)) used[std::size_t(x)] = 1;
    std::vector<char> taken(std::size_t(g.n()), 0);
    for (int x : g.neighbors(s)) {
        if (paths > enough) break;
        if (used[std::size_t(x)] || x == t) continue;
        for (int y : g.neighbors(x)) {
            if (y == s || y == t || used[std::size_t(y)] || taken[std::size_t(y)])
                continue;
            if (!g.has_edge(y, t)) continue;
            if (g.has_edge(y, s)) continue;
            taken[std::size_t(y)] = 1;
            taken[std::size_t(x)] = 1;
            ++paths;
            break;
        }
    }
    return paths;
}

std::optional<std::vector<int>> cut_search(const Graph& g, int budget);

// Cuts that contain `pivot` are cuts of the graph without it, one smaller.
std::optional<std::vector<int>> cut_through_pivot(const Graph& g, int pivot,
                                                  int budget) {
    if (budget < 1) return std::nullopt;
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v)
        if (v != pivot) keep.push_back(v);
    Induced sub = induced_subgraph(g, keep);
    auto inner = cut_search(sub.graph, budget - 1);
    if (!inner) return std::nullopt;
    std::vector<int> cut{pivot};
    for (int v : *inner) cut.push_back(sub.label[std::size_t(v)]);
    std::sort(cut.begin(), cut.end());
    return cut;
}

std::optional<std::vector<int>> cut_search(const Graph& g, int budget) {
    if (budget < 0) return std::nullopt;
    if (g.n() < 2) return std::nullopt;
    if (connected_components(g).size() > 1) return std::vector<int>{};
    if (budget == 0) return std::nullopt;
    if (g.is_complete()) return std::nullopt;

    int pivot = 0;
    for (int v = 1; v < g.n(); ++v)
        if (g.degree(v) < g.degree(pivot)) pivot = v;
    int min_deg = g.degree(pivot);

    // Dirac-style bound: high minimum degree forces high connectivity.
    if (2 * min_deg - g.n() + 2 > budget) return std::nullopt;

    std::optional<std::vector<int>> best;
    int cap = budget;
    // A minimum-degree neighborhood disconnects whenever anything is left
    // over; it seeds the search with an upper bound to beat.
    if (min_deg <= cap && g.n() >= min_deg + 2) {
        best = g.neighbors(pivot);
        cap = min_deg - 1;
    }

    NeighborBits nb(g);
    SplitFlow flow(g);
    for (int t = 0; t < g.n() && cap >= 1; ++t) {
        if (t == pivot || g.has_edge(pivot, t)) continue;
        if (disjoint_path_lower_bound(g, nb, pivot, t, cap) > cap) continue;
        flow.reset();
        int value = flow.maxflow_upto(2 * pivot + 1, 2 * t, cap);
        if (value > cap) continue;
        best = flow.cut_vertices(2 * pivot + 1);
        cap = value - 1;
    }

    if (auto through = cut_through_pivot(g, pivot, cap)) {
        if (!best || through->size() < best->size()) best = through;
    }
    return best;
}

} // namespace

std::optional<std::vector<int>> vertex_cut_upto(const Graph& g, int d) {
    if (d < 0) throw std::invalid_argument("cut budget must be non-negative");
    if (g.n() <= d + 1) throw std::invalid_argument("graph too small");
    if (connected_components(g).size() > 1)
        throw std::invalid_argument("graph must be connected");
    auto cut = cut_search(g, std::min(d, g.n() - 2));
    if (cut) std::sort(cut->begin(), cut->end());
    return cut;
}

bool is_three_connected(const Graph& g) {
    if (g.n() < 4)
        throw std::invalid_argument("three-connectivity needs at least 4 vertices");
    if (connected_components(g).size() > 1) return false;
    return !vertex_cut_upto(g, 2).has_value();
}

} // namespace treedisc
