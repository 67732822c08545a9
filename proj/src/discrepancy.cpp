#include "treedisc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "dsu.hpp"
#include "treedisc/check.hpp"
#include "treedisc/rng.hpp"

namespace treedisc {

long long signed_color_sum(const SpanningForest& f, const EdgeColoring& chi) {
    long long sum = 0;
    for (const auto& e : f.edges) sum += chi.color(e);
    return sum;
}

long long signed_color_sum(const Tree& t, const EdgeColoring& chi) {
    long long sum = 0;
    for (const auto& e : t.edges) sum += chi.color(e);
    return sum;
}

std::pair<long long, long long> discrepancy(const SpanningForest& f,
                                            const EdgeColoring& chi) {
    long long s = signed_color_sum(f, chi);
    return {s, std::llabs(s)};
}

std::pair<long long, long long> discrepancy(const Tree& t,
                                            const EdgeColoring& chi) {
    long long s = signed_color_sum(t, chi);
    return {s, std::llabs(s)};
}

namespace {

struct Pendant {
    int leaf;
    int anchor;
    int color;
};

// Pendant edges of a tree, one per leaf, leaves ascending.
std::vector<Pendant> pendant_edges(const Tree& t, const EdgeColoring& chi) {
    std::vector<int> anchor(std::size_t(t.host_n), -1);
    for (const auto& e : t.edges) {
        anchor[std::size_t(e.first)] = e.second;
        anchor[std::size_t(e.second)] = e.first;
    }
    std::vector<Pendant> out;
    for (int v : tree_leaves(t))
        out.push_back({v, anchor[std::size_t(v)], chi.color(v, anchor[std::size_t(v)])});
    // A two-vertex tree lists its lone edge from both ends; keep one copy.
    if (out.size() == 2 && out[0].leaf == out[1].anchor && out[0].anchor == out[1].leaf)
        out.pop_back();
    // Smallest-edge-label order, so any truncation below is deterministic.
    std::sort(out.begin(), out.end(), [](const Pendant& a, const Pendant& b) {
        return make_edge(a.leaf, a.anchor) < make_edge(b.leaf, b.anchor);
    });
    return out;
}

std::vector<int> touched_vertices(const std::vector<Pendant>& pends) {
    std::vector<int> out;
    for (const auto& p : pends) {
        out.push_back(p.leaf);
        out.push_back(p.anchor);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

BoostContext build_boost_context(const Tree& t, const EdgeColoring& chi,
                                 double delta) {
    validate_tree(t);
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("delta must lie in (0, 0.5)");

    BoostContext ctx;
    // Floor, nudged so exact products are not lost to binary rounding.
    int demand = int(delta * t.host_n + 1e-9);
    if (demand < 1) {
        ctx.reason = "pendant demand rounds to zero";
        return ctx;
    }
    if (t.size() < 3) {
        ctx.reason = "tree too small for an inner tree";
        return ctx;
    }

    auto tp = pendant_edges(t, chi);
    Tree inner = inner_tree(t);
    auto ip = inner.size() >= 2 ? pendant_edges(inner, chi)
                                : std::vector<Pendant>{};

    ctx.m1 = touched_vertices(tp);
    ctx.m2 = touched_vertices(ip);

    int plus = 0;
    for (const auto& p : tp) plus += p.color > 0;
    int minus = int(tp.size()) - plus;

    auto emit = [](const Pendant& p, std::vector<Edge>& es, std::vector<int>& vs) {
        es.push_back(make_edge(p.leaf, p.anchor));
        vs.push_back(p.leaf);
    };

    if (plus >= demand && minus >= demand) {
        // Both colors are already rich among the outer pendants; take the
        // full classes and let the swap budget decide how much gets used.
        for (const auto& p : tp)
            emit(p, p.color > 0 ? ctx.e1 : ctx.e2, p.color > 0 ? ctx.v1 : ctx.v2);
        ctx.e1_color = 1;
        ctx.case_tag = 1;
        ctx.feasible = true;
        return ctx;
    }

    int major = plus >= minus ? 1 : -1;
    if ((major > 0 ? plus : minus) < demand) {
        ctx.reason = "too few pendant edges of the majority color";
        return ctx;
    }
    for (const auto& p : tp) {
        if (p.color == major && int(ctx.e1.size()) < demand) emit(p, ctx.e1, ctx.v1);
    }

    std::vector<char> blocked(std::size_t(t.host_n), 0);
    for (const auto& e : ctx.e1) {
        blocked[std::size_t(e.first)] = 1;
        blocked[std::size_t(e.second)] = 1;
    }
    // The scarce color gets padded from the inner tree's pendants, skipping
    // anything that touches vertices the first class already claimed.
    auto scavenge = [&](const std::vector<Pendant>& pends) {
        for (const auto& p : pends) {
            if (int(ctx.e2.size()) >= demand) break;
            if (p.color == major) continue;
            if (blocked[std::size_t(p.leaf)] || blocked[std::size_t(p.anchor)]) continue;
            emit(p, ctx.e2, ctx.v2);
        }
    };
    scavenge(tp);
    scavenge(ip);
    if (int(ctx.e2.size()) < demand) {
        ctx.reason = "too few pendant edges of the opposite color";
        return ctx;
    }
    ctx.e1_color = major;
    ctx.case_tag = 2;
    ctx.feasible = true;
    return ctx;
}

namespace {

// Forest under swap surgery. Degrees and leaf count track the whole forest;
// parent and depth cover the component of `root`, where all swaps happen.
struct ForestScratch {
    std::vector<std::vector<int>> adj;
    std::vector<int> deg;
    std::vector<int> parent;
    std::vector<int> depth;
    int root = -1;
    long long leaf_count = 0;

    void build(const SpanningForest& f, int path_root) {
        std::size_t n = std::size_t(f.host_n);
        adj.assign(n, {});
        deg.assign(n, 0);
        parent.assign(n, -1);
        depth.assign(n, -1);
        for (const auto& e : f.edges) {
            adj[std::size_t(e.first)].push_back(e.second);
            adj[std::size_t(e.second)].push_back(e.first);
            ++deg[std::size_t(e.first)];
            ++deg[std::size_t(e.second)];
        }
        leaf_count = std::count(deg.begin(), deg.end(), 1);
        root = path_root;
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

    bool has_edge(int a, int b) const {
        const auto& list = adj[std::size_t(a)];
        return std::find(list.begin(), list.end(), b) != list.end();
    }

    // Neighbor of b on the a-to-b path within the root's component.
    int step_toward(int a, int b) const {
        if (depth[std::size_t(a)] <= depth[std::size_t(b)])
            return parent[std::size_t(b)];
        int x = a, prev = -1;
        while (depth[std::size_t(x)] > depth[std::size_t(b)]) {
            prev = x;
            x = parent[std::size_t(x)];
        }
        return x == b ? prev : parent[std::size_t(b)];
    }

    void swap_edges(int u, int w, int x) {
        auto drop = [&](int a, int b) {
            auto& list = adj[std::size_t(a)];
            auto it = std::find(list.begin(), list.end(), b);
            TREEDISC_CHECK(it != list.end());
            list.erase(it);
        };
        auto was_leaf = [&](int v) { return deg[std::size_t(v)] == 1; };
        leaf_count -= was_leaf(u) + was_leaf(w) + was_leaf(x);
        drop(u, w);
        drop(w, u);
        adj[std::size_t(u)].push_back(x);
        adj[std::size_t(x)].push_back(u);
        --deg[std::size_t(w)];
        ++deg[std::size_t(x)];
        leaf_count += was_leaf(u) + was_leaf(w) + was_leaf(x);
        rebuild_paths();
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int v = 0; v < int(adj.size()); ++v)
            for (int w : adj[std::size_t(v)])
                if (v < w) out.push_back({v, w});
        std::sort(out.begin(), out.end());
        return out;
    }
};

} // namespace

DiscrepancyResult boost_forest(const Graph& g, const EdgeColoring& chi,
                               const BoostParams& params) {
    if (g.n() == 0) throw std::invalid_argument("empty graph");
    if (!(params.alpha > 0.0 && params.alpha < 0.2))
        throw std::invalid_argument("alpha must lie in (0, 1/5)");
    if (!(params.delta > 0.0 && params.delta < 0.5))
        throw std::invalid_argument("delta must lie in (0, 0.5)");

    Rng base(params.seed);

    // Split the edges into two layers so the second leaf phase works with
    // edges that had no hand in shaping the first tree.
    std::vector<Edge> le1, le2;
    {
        Rng coin = base.split(1);
        for (const auto& e : g.edges())
            (coin.next_bool() ? le1 : le2).push_back(e);
    }
    Graph layer1 = Graph::from_edges(g.n(), std::move(le1));
    Graph layer2 = Graph::from_edges(g.n(), std::move(le2));

    LeafRunParams p1 = params.phase1;
    LeafRunParams p2 = params.phase2;
    p1.seed = base.split(2).next_u64();
    p2.seed = base.split(3).next_u64();
    TwoPhaseResult two = two_phase_leafy_tree(layer1, layer2, p1, p2);

    // The two phases only span the first layer's giant; pull the rest of its
    // graph component in breadth-first, then give every other component an
    // arbitrary tree.
    Tree big = two.tree;
    {
        std::vector<char> in(std::size_t(g.n()), 0);
        std::queue<int> q;
        for (int v : big.vertices) {
            in[std::size_t(v)] = 1;
            q.push(v);
        }
        std::vector<int> fresh;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.neighbors(u)) {
                if (in[std::size_t(w)]) continue;
                in[std::size_t(w)] = 1;
                big.edges.push_back(make_edge(u, w));
                fresh.push_back(w);
                q.push(w);
            }
        }
        big.vertices.insert(big.vertices.end(), fresh.begin(), fresh.end());
        std::sort(big.vertices.begin(), big.vertices.end());
        std::sort(big.edges.begin(), big.edges.end());
        validate_tree(big);
    }

    std::vector<Tree> trees{big};
    {
        Rng stray = base.split(4);
        std::vector<char> covered(std::size_t(g.n()), 0);
        for (int v : big.vertices) covered[std::size_t(v)] = 1;
        for (const auto& comp : connected_components(g)) {
            if (covered[std::size_t(comp.front())]) continue;
            trees.push_back(spanning_tree_arbitrary(g, stray, comp.front()));
        }
    }
    SpanningForest start = forest_from_trees(g.n(), trees);
    validate_spanning_forest(start, g);

    DiscrepancyResult out;
    out.forest = start;
    out.initial_signed_sum = signed_color_sum(start, chi);
    out.signed_sum = out.initial_signed_sum;
    out.abs_discrepancy = std::llabs(out.signed_sum);
    out.leaf_count = forest_leaf_count(start);
    out.epsilon_achieved = double(out.abs_discrepancy) / g.n();

    BoostContext ctx = build_boost_context(big, chi, params.delta);
    out.case_tag = ctx.case_tag;
    if (!ctx.feasible) {
        out.status = BoostStatus::ContextInfeasible;
        return out;
    }

    Matching matching = max_bipartite_matching(g, ctx.v1, ctx.v2);
    if (matching.pairs.empty()) {
        out.status = BoostStatus::NoUsefulSwap;
        return out;
    }

    long long edge_sum = 0;
    for (const auto& e : matching.pairs) edge_sum += chi.color(e);
    int s = edge_sum >= 0 ? 1 : -1;
    out.majority_sign = s;

    // Remove pendants of the minority color; the matched graph edge then
    // contributes the majority color, worth +2s per swap.
    const bool anchors_first = ctx.e1_color == -s;
    std::unordered_map<int, int> anchor_of;
    const auto& av = anchors_first ? ctx.v1 : ctx.v2;
    const auto& ae = anchors_first ? ctx.e1 : ctx.e2;
    for (std::size_t i = 0; i < av.size(); ++i) {
        const Edge& e = ae[i];
        anchor_of[av[i]] = e.first == av[i] ? e.second : e.first;
    }

    ForestScratch scratch;
    scratch.build(start, big.vertices.front());

    const long long min_leaves =
        (long long)(std::ceil(params.alpha * g.n() - 1e-9));
    long long sigma0 = out.initial_signed_sum;
    int applied = 0;
    for (const auto& pr : matching.pairs) {
        auto it = anchor_of.find(pr.first);
        int u = pr.first, x = pr.second;
        if (it == anchor_of.end()) {
            std::swap(u, x);
            it = anchor_of.find(u);
        }
        TREEDISC_CHECK(it != anchor_of.end());
        if (chi.color(u, x) != s) continue;
        if (scratch.leaf_count - 1 < min_leaves) break;

        int w = it->second;
        // Reattaching u to x only keeps a tree if x sits on the far side of
        // the pendant edge being removed.
        if (scratch.deg[std::size_t(u)] != 1 && scratch.step_toward(x, u) != w)
            continue;
        TREEDISC_CHECK(chi.color(u, w) == -s);
        TREEDISC_CHECK(!scratch.has_edge(u, x));
        scratch.swap_edges(u, w, x);
        ++applied;
    }

    long long sigma_final = sigma0 + 2LL * applied * s;
    if (std::llabs(sigma_final) <= std::llabs(sigma0)) {
        out.status = BoostStatus::NoUsefulSwap;
        return out;
    }

    SpanningForest boosted;
    boosted.host_n = g.n();
    boosted.edges = scratch.edges();
    validate_spanning_forest(boosted, g);
    TREEDISC_CHECK(signed_color_sum(boosted, chi) == sigma_final);

    out.forest = std::move(boosted);
    out.signed_sum = sigma_final;
    out.abs_discrepancy = std::llabs(sigma_final);
    out.leaf_count = int(scratch.leaf_count);
    out.swaps_applied = applied;
    out.epsilon_achieved = double(out.abs_discrepancy) / g.n();
    out.status = BoostStatus::Ok;
    TREEDISC_CHECK(out.leaf_count == forest_leaf_count(out.forest));
    TREEDISC_CHECK(out.leaf_count >= min_leaves || applied == 0);
    return out;
}

Tree forest_to_tree(const Graph& g, const SpanningForest& f) {
    // The forest may have more trees than g has components (a forest grown
    // on a subgraph, say); connectors close exactly that gap. So the input
    // is checked as a forest of g, not as a maximal spanning forest.
    if (f.host_n != g.n())
        throw std::invalid_argument("forest host order differs from graph");
    Dsu dsu(g.n());
    for (const auto& e : f.edges) {
        if (!g.has_edge(e.first, e.second))
            throw std::invalid_argument("forest edge absent from graph");
        if (!dsu.unite(e.first, e.second))
            throw std::invalid_argument("forest contains a cycle");
    }

    Tree t;
    t.host_n = g.n();
    t.vertices.resize(std::size_t(g.n()));
    for (int v = 0; v < g.n(); ++v) t.vertices[std::size_t(v)] = v;
    t.edges = f.edges;
    for (const auto& e : g.edges())
        if (dsu.unite(e.first, e.second)) t.edges.push_back(e);
    if (t.edges.size() + 1 != std::size_t(g.n()))
        throw std::invalid_argument("graph is disconnected; no spanning tree exists");
    std::sort(t.edges.begin(), t.edges.end());
    validate_tree(t);
    return t;
}

HighDiscResult high_disc_spanning_tree(const Graph& g1, const Graph& g2,
                                       const EdgeColoring& chi,
                                       const BoostParams& params) {
    if (g1.n() != g2.n())
        throw std::invalid_argument("layers need a common vertex set");

    HighDiscResult out;
    out.forest_stage = boost_forest(g2, chi, params);
    Graph merged = union_graphs(g1, g2);
    out.tree = forest_to_tree(merged, out.forest_stage.forest);
    out.connector_edges = int(out.forest_stage.forest.component_count()) - 1;
    out.signed_sum = signed_color_sum(out.tree, chi);
    out.abs_discrepancy = std::llabs(out.signed_sum);
    out.majority_count = (static_cast<long long>(g1.n() - 1) + out.abs_discrepancy) / 2;
    // Each connector shifts the signed sum by one at most.
    TREEDISC_CHECK(out.abs_discrepancy >=
                   out.forest_stage.abs_discrepancy - out.connector_edges);
    return out;
}

} // namespace treedisc
