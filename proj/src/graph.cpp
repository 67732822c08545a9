#include "treedisc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "treedisc/rng.hpp"

namespace treedisc {

Graph::Graph(int n) : n_(n), adj_(std::size_t(std::max(n, 0))) {
    if (n < 0) throw std::invalid_argument("graph order must be non-negative");
}

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
    Graph g(n);
    for (auto& e : edges) {
        if (e.first == e.second)
            throw std::invalid_argument("loop edge rejected");
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw std::invalid_argument("edge endpoint out of range");
        e = make_edge(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge rejected");
    for (const auto& e : edges) {
        g.adj_[std::size_t(e.first)].push_back(e.second);
        g.adj_[std::size_t(e.second)].push_back(e.first);
    }
    for (auto& list : g.adj_) std::sort(list.begin(), list.end());
    g.edges_ = std::move(edges);
    return g;
}

const std::vector<int>& Graph::neighbors(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    return adj_[std::size_t(v)];
}

int Graph::degree(int v) const { return int(neighbors(v).size()); }

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("vertex out of range");
    if (u == v) return false;
    const auto& list = adj_[std::size_t(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

bool Graph::is_complete() const {
    return edges_.size() == std::uint64_t(n_) * std::uint64_t(n_ - 1) / 2;
}

Graph gen_gnp(const GnpParams& params) {
    if (params.n < 0) throw std::invalid_argument("graph order must be non-negative");
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0,1]");
    if (params.p == 0.0 || params.n < 2) return Graph(params.n);

    std::vector<Edge> edges;
    if (params.p == 1.0) {
        edges.reserve(std::size_t(params.n) * (params.n - 1) / 2);
        for (int u = 0; u < params.n; ++u)
            for (int v = u + 1; v < params.n; ++v) edges.push_back({u, v});
        return Graph::from_edges(params.n, std::move(edges));
    }

    // Geometric skipping: walk the pair list (w, v), w < v, jumping ahead by
    // Geom(p) each step, so the work is linear in n + |E|.
    Rng rng(params.seed);
    const double log_q = std::log1p(-params.p);
    std::int64_t v = 1, w = -1;
    while (v < params.n) {
        double r = rng.next_double();
        w += 1 + std::int64_t(std::floor(std::log1p(-r) / log_q));
        while (w >= v && v < params.n) {
            w -= v;
            ++v;
        }
        if (v < params.n) edges.push_back({int(w), int(v)});
    }
    return Graph::from_edges(params.n, std::move(edges));
}

namespace {

// k-th pair in the lexicographic list of (u, v), u < v, 0-based. Pairs with
// first coordinate below u number cum(u) = u*(2n - u - 1)/2.
Edge pair_from_index(int n, std::uint64_t k) {
    auto cum = [&](std::uint64_t u) { return u * (2 * std::uint64_t(n) - u - 1) / 2; };
    std::uint64_t lo = 0, hi = std::uint64_t(n - 1);
    while (lo + 1 < hi) {
        std::uint64_t mid = (lo + hi) / 2;
        if (cum(mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    int u = int(lo);
    int v = u + 1 + int(k - cum(lo));
    return {u, v};
}

} // namespace

Graph gen_gnm(int n, std::uint64_t m, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("graph order must be non-negative");
    std::uint64_t total = std::uint64_t(n) * std::uint64_t(std::max(n - 1, 0)) / 2;
    if (m > total) throw std::invalid_argument("edge count exceeds pair count");

    // Floyd: each pass either keeps the fresh index j or the redraw, giving a
    // uniform m-subset of {0, ..., total-1} without rejection loops.
    Rng rng(seed);
    std::unordered_set<std::uint64_t> picked;
    picked.reserve(std::size_t(m) * 2);
    for (std::uint64_t j = total - m; j < total; ++j) {
        std::uint64_t t = rng.next_below(j + 1);
        picked.insert(picked.count(t) ? j : t);
    }

    std::vector<Edge> edges;
    edges.reserve(std::size_t(m));
    for (std::uint64_t k : picked) edges.push_back(pair_from_index(n, k));
    return Graph::from_edges(n, std::move(edges));
}

Graph union_graphs(const Graph& a, const Graph& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("union requires equal vertex sets");
    std::vector<Edge> edges = a.edges();
    edges.insert(edges.end(), b.edges().begin(), b.edges().end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(a.n(), std::move(edges));
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(std::size_t(std::max(g.n(), 0)), 0);
    for (int s = 0; s < g.n(); ++s) {
        if (seen[std::size_t(s)]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[std::size_t(s)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int w : g.neighbors(u)) {
                if (!seen[std::size_t(w)]) {
                    seen[std::size_t(w)] = 1;
                    q.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() > y.size();
        return x.front() < y.front();
    });
    return comps;
}

double rho_fixed_point(double c, double tol) {
    if (!(c > 1.0))
        throw std::invalid_argument("fixed point requires mean degree above 1");
    // f(r) = exp(-c(1-r)) - r is positive at 0 and negative just below 1, and
    // crosses zero exactly once inside (0,1); plain bisection suffices.
    auto f = [&](double r) { return std::exp(-c * (1.0 - r)) - r; };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

struct HopcroftKarp {
    const std::vector<std::vector<int>>& adj;  // left index -> right indices
    int nl, nr;
    std::vector<int> match_l, match_r, dist;

    explicit HopcroftKarp(const std::vector<std::vector<int>>& a, int right_count)
        : adj(a), nl(int(a.size())), nr(right_count),
          match_l(std::size_t(nl), -1), match_r(std::size_t(nr), -1),
          dist(std::size_t(nl), 0) {}

    bool bfs() {
        std::queue<int> q;
        bool reachable = false;
        for (int i = 0; i < nl; ++i) {
            if (match_l[std::size_t(i)] < 0) {
                dist[std::size_t(i)] = 0;
                q.push(i);
            } else {
                dist[std::size_t(i)] = -1;
            }
        }
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            for (int j : adj[std::size_t(i)]) {
                int k = match_r[std::size_t(j)];
                if (k < 0) {
                    reachable = true;
                } else if (dist[std::size_t(k)] < 0) {
                    dist[std::size_t(k)] = dist[std::size_t(i)] + 1;
                    q.push(k);
                }
            }
        }
        return reachable;
    }

    bool dfs(int i) {
        for (int j : adj[std::size_t(i)]) {
            int k = match_r[std::size_t(j)];
            if (k < 0 || (dist[std::size_t(k)] == dist[std::size_t(i)] + 1 && dfs(k))) {
                match_l[std::size_t(i)] = j;
                match_r[std::size_t(j)] = i;
                return true;
            }
        }
        dist[std::size_t(i)] = -1;
        return false;
    }

    void run() {
        while (bfs())
            for (int i = 0; i < nl; ++i)
                if (match_l[std::size_t(i)] < 0) dfs(i);
    }
};

} // namespace

Matching max_bipartite_matching(const Graph& g, const std::vector<int>& left,
                                const std::vector<int>& right) {
    std::vector<int> side(std::size_t(std::max(g.n(), 0)), -1);
    auto place = [&](const std::vector<int>& part, int tag) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            int v = part[i];
            if (v < 0 || v >= g.n())
                throw std::invalid_argument("matching vertex out of range");
            if (side[std::size_t(v)] != -1)
                throw std::invalid_argument("matching sides must be disjoint");
            side[std::size_t(v)] = tag;
        }
    };
    place(left, 0);
    place(right, 1);

    std::vector<int> right_index(std::size_t(std::max(g.n(), 0)), -1);
    for (std::size_t j = 0; j < right.size(); ++j)
        right_index[std::size_t(right[j])] = int(j);

    std::vector<std::vector<int>> adj(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (int w : g.neighbors(left[i])) {
            int j = right_index[std::size_t(w)];
            if (j >= 0) adj[i].push_back(j);
        }
        std::sort(adj[i].begin(), adj[i].end());
    }

    HopcroftKarp hk(adj, int(right.size()));
    hk.run();

    Matching out;
    for (std::size_t i = 0; i < left.size(); ++i)
        if (hk.match_l[i] >= 0)
            out.pairs.push_back(make_edge(left[i], right[std::size_t(hk.match_l[i])]));
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

} // namespace treedisc
