#include "treedisc/leafy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "treedisc/check.hpp"

namespace treedisc {

double default_steps_factor(double target_leaf_fraction) {
    // Past one third of the vertices the producer supply can dry up, so no
    // finite budget is principled there; fall back to a generous constant.
    if (target_leaf_fraction >= 1.0 / 3.0 - 1e-12) return 100.0;
    return std::ceil(1.0 / (4.0 * (1.0 / 3.0 - target_leaf_fraction)));
}

Tree spanning_tree_arbitrary(const Graph& g, Rng& rng, int root) {
    if (g.n() == 0) throw std::invalid_argument("empty graph has no spanning tree");
    if (root >= g.n()) throw std::invalid_argument("root out of range");
    if (root < 0) {
        if (connected_components(g).size() != 1)
            throw std::invalid_argument("graph is not connected; give a root");
        root = int(rng.next_below(std::uint64_t(g.n())));
    }

    // Breadth-first with shuffled neighbor order: on dense graphs this leans
    // hard toward shallow, leafy trees.
    Tree t;
    t.host_n = g.n();
    std::vector<char> seen(std::size_t(g.n()), 0);
    std::queue<int> q;
    seen[std::size_t(root)] = 1;
    q.push(root);
    std::vector<int> fresh;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        t.vertices.push_back(u);
        fresh.clear();
        for (int w : g.neighbors(u))
            if (!seen[std::size_t(w)]) fresh.push_back(w);
        rng.shuffle(fresh.begin(), fresh.end());
        for (int w : fresh) {
            seen[std::size_t(w)] = 1;
            t.edges.push_back(make_edge(u, w));
            q.push(w);
        }
    }
    std::sort(t.vertices.begin(), t.vertices.end());
    std::sort(t.edges.begin(), t.edges.end());
    return t;
}

namespace {

// Mutable tree view used by the probe/apply cycle. Host-indexed arrays;
// parent and depth are valid between rebuilds, adjacency and degrees always.
struct TreeScratch {
    std::vector<char> in_tree;
    std::vector<int> deg;
    std::vector<std::vector<int>> adj;
    std::vector<int> parent;
    std::vector<int> depth;
    int root = -1;
    int vertex_count = 0;
    int leaf_count = 0;

    void build(const Tree& t) {
        std::size_t n = std::size_t(t.host_n);
        in_tree.assign(n, 0);
        deg.assign(n, 0);
        adj.assign(n, {});
        parent.assign(n, -1);
        depth.assign(n, -1);
        vertex_count = int(t.vertices.size());
        for (int v : t.vertices) in_tree[std::size_t(v)] = 1;
        for (const auto& e : t.edges) {
            adj[std::size_t(e.first)].push_back(e.second);
            adj[std::size_t(e.second)].push_back(e.first);
            ++deg[std::size_t(e.first)];
            ++deg[std::size_t(e.second)];
        }
        leaf_count = 0;
        for (int v : t.vertices)
            if (deg[std::size_t(v)] == 1) ++leaf_count;
        root = t.vertices.front();
        rebuild_paths();
    }

    void rebuild_paths() {
        parent[std::size_t(root)] = -1;
        depth[std::size_t(root)] = 0;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[std::size_t(u)]) {
                if (w == parent[std::size_t(u)]) continue;
                parent[std::size_t(w)] = u;
                depth[std::size_t(w)] = depth[std::size_t(u)] + 1;
                q.push(w);
            }
        }
    }

    bool tree_adjacent(int a, int b) const {
        return parent[std::size_t(a)] == b || parent[std::size_t(b)] == a;
    }

    // Neighbor of b on the unique a-to-b tree path. Only when b is a proper
    // ancestor of a does the path reach b from below.
    int penultimate(int a, int b) const {
        if (depth[std::size_t(a)] <= depth[std::size_t(b)])
            return parent[std::size_t(b)];
        int x = a, prev = -1;
        while (depth[std::size_t(x)] > depth[std::size_t(b)]) {
            prev = x;
            x = parent[std::size_t(x)];
        }
        return x == b ? prev : parent[std::size_t(b)];
    }

    // Checks whether the ordered pair (a, b) certifies a producer move; the
    // caller guarantees a-b is a graph edge with both ends in the tree.
    std::optional<ProducerMove> probe(int a, int b) const {
        if (tree_adjacent(a, b)) return std::nullopt;
        if (deg[std::size_t(a)] < 2) return std::nullopt;
        int star = penultimate(a, b);
        if (deg[std::size_t(star)] != 2) return std::nullopt;
        for (int w : adj[std::size_t(star)]) {
            if (deg[std::size_t(w)] < 2) return std::nullopt;
            if (tree_adjacent(a, w)) return std::nullopt;
        }
        return ProducerMove{a, b, star};
    }

    void apply(const ProducerMove& mv) {
        auto drop = [&](int u, int w) {
            auto& list = adj[std::size_t(u)];
            list.erase(std::find(list.begin(), list.end(), w));
        };
        drop(mv.u_star, mv.u2);
        drop(mv.u2, mv.u_star);
        adj[std::size_t(mv.u1)].push_back(mv.u2);
        adj[std::size_t(mv.u2)].push_back(mv.u1);
        --deg[std::size_t(mv.u_star)];
        ++deg[std::size_t(mv.u1)];
        TREEDISC_CHECK(deg[std::size_t(mv.u_star)] == 1);
        ++leaf_count;
        rebuild_paths();
    }

    Tree to_tree(int host_n) const {
        Tree t;
        t.host_n = host_n;
        for (int v = 0; v < host_n; ++v)
            if (in_tree[std::size_t(v)]) {
                t.vertices.push_back(v);
                for (int w : adj[std::size_t(v)])
                    if (v < w) t.edges.push_back({v, w});
            }
        std::sort(t.edges.begin(), t.edges.end());
        return t;
    }
};

} // namespace

std::optional<ProducerMove> find_producer(const Graph& g, const Tree& t,
                                          const Edge& e) {
    int a = std::min(e.first, e.second);
    int b = std::max(e.first, e.second);
    if (a < 0 || b >= g.n())
        throw std::invalid_argument("vertex out of range");
    if (a == b) throw std::invalid_argument("endpoints must differ");
    validate_tree(t);
    if (t.host_n != g.n())
        throw std::invalid_argument("tree host order differs from graph");

    auto in_tree = [&](int v) {
        return std::binary_search(t.vertices.begin(), t.vertices.end(), v);
    };
    if (!in_tree(a) || !in_tree(b) || !g.has_edge(a, b)) return std::nullopt;

    TreeScratch scratch;
    scratch.build(t);
    auto mv = scratch.probe(a, b);
    if (!mv) mv = scratch.probe(b, a);
    return mv;
}

Tree apply_producer(const Tree& t, const ProducerMove& mv) {
    validate_tree(t);
    int before = tree_leaf_count(t);
    Tree out;
    out.host_n = t.host_n;
    out.vertices = t.vertices;
    Edge removed = make_edge(mv.u_star, mv.u2);
    Edge added = make_edge(mv.u1, mv.u2);
    bool dropped = false;
    for (const auto& e : t.edges) {
        if (e == removed && !dropped) {
            dropped = true;
            continue;
        }
        out.edges.push_back(e);
    }
    if (!dropped) throw std::invalid_argument("move removes an edge not in the tree");
    out.edges.push_back(added);
    std::sort(out.edges.begin(), out.edges.end());
    validate_tree(out);
    TREEDISC_CHECK(tree_leaf_count(out) == before + 1);
    return out;
}

Tree leaf_increase(const Graph& g, const Tree& t, const LeafRunParams& params,
                   std::vector<LeafTraceRow>* trace) {
    validate_tree(t);
    if (t.host_n != g.n())
        throw std::invalid_argument("tree host order differs from graph");
    if (!(params.target_leaf_fraction > 0.0 && params.target_leaf_fraction < 1.0))
        throw std::invalid_argument("target leaf fraction must lie in (0,1)");

    int nt = int(t.size());
    if (nt < 3) return t;

    // Candidate pool: graph edges with both ends in the tree. New edges come
    // from here; the tree's own edges need not belong to the graph at all.
    std::vector<char> member(std::size_t(g.n()), 0);
    for (int v : t.vertices) member[std::size_t(v)] = 1;
    std::vector<Edge> pool;
    for (const auto& e : g.edges())
        if (member[std::size_t(e.first)] && member[std::size_t(e.second)])
            pool.push_back(e);
    if (pool.empty()) return t;

    double factor = params.max_steps_factor > 0.0
                        ? params.max_steps_factor
                        : default_steps_factor(params.target_leaf_fraction);
    std::int64_t budget = std::int64_t(std::ceil(factor * nt));
    // Leaves reaching target * |V(t)| ends the run early.
    double goal = params.target_leaf_fraction * nt - 1e-9;

    TreeScratch scratch;
    scratch.build(t);
    if (trace) trace->push_back({0, scratch.leaf_count, false});

    Rng rng(params.seed);
    for (std::int64_t step = 1; step <= budget && scratch.leaf_count < goal; ++step) {
        const Edge& e = pool[std::size_t(rng.next_below(pool.size()))];
        auto mv = scratch.probe(e.first, e.second);
        if (!mv) mv = scratch.probe(e.second, e.first);
        if (mv) scratch.apply(*mv);
        if (trace) trace->push_back({step, scratch.leaf_count, mv.has_value()});
    }
    return scratch.to_tree(g.n());
}

TwoPhaseResult two_phase_leafy_tree(const Graph& g1, const Graph& g2,
                                    const LeafRunParams& phase1,
                                    const LeafRunParams& phase2) {
    if (g1.n() != g2.n())
        throw std::invalid_argument("phases need a common vertex set");
    if (g1.n() == 0) throw std::invalid_argument("empty graph");

    auto comps = connected_components(g1);
    const auto& giant = comps.front();

    Rng seed_rng = Rng(phase1.seed).split(0x7ee);
    Tree t0 = spanning_tree_arbitrary(g1, seed_rng, giant.front());
    Tree t1 = leaf_increase(g1, t0, phase1);

    TwoPhaseResult out;
    out.t1_leaf_count = tree_leaf_count(t1);

    if (t1.size() < 3) {
        out.tree = t1;
        out.t2_leaf_count = out.t1_leaf_count;
        out.cover_count = out.t1_leaf_count;
        return out;
    }

    // Phase two reshapes only the inner tree; the second graph's edges are
    // fresh randomness relative to it.
    Tree inner = inner_tree(t1);
    std::vector<std::pair<int, int>> pendants;  // leaf -> its phase-one anchor
    {
        std::vector<int> anchor(std::size_t(t1.host_n), -1);
        for (const auto& e : t1.edges) {
            anchor[std::size_t(e.first)] = e.second;
            anchor[std::size_t(e.second)] = e.first;
        }
        for (int v : tree_leaves(t1)) pendants.push_back({v, anchor[std::size_t(v)]});
    }

    Tree reshaped = inner.size() >= 3 ? leaf_increase(g2, inner, phase2) : inner;

    Tree t;
    t.host_n = t1.host_n;
    t.vertices = t1.vertices;
    t.edges = reshaped.edges;
    for (const auto& [leaf, anchor] : pendants)
        t.edges.push_back(make_edge(leaf, anchor));
    std::sort(t.edges.begin(), t.edges.end());
    validate_tree(t);

    out.tree = t;
    out.t2_leaf_count = tree_leaf_count(reshaped);
    // Leaves of T and leaves of its inner tree are disjoint vertex sets, so
    // the union's size is the plain sum.
    out.cover_count = tree_leaf_count(t) +
                      (t.size() >= 3 ? tree_leaf_count(inner_tree(t)) : 0);
    return out;
}

} // namespace treedisc
