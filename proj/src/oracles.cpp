#include "treedisc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "treedisc/check.hpp"
#include "treedisc/discrepancy.hpp"
#include "treedisc/rng.hpp"

namespace treedisc {

namespace {

// An edge of the working multigraph during contraction. Endpoints drift as
// vertices merge; `original` keeps the identity in the host graph.
struct MultiEdge {
    int a = 0;
    int b = 0;
    Edge original;
};

// Connectivity over the current labels. `alive` is how many distinct labels
// the multigraph should still touch; a label with no incident edge means a
// stranded vertex, which is as disconnected as a split is.
bool multigraph_connected(const std::vector<MultiEdge>& edges, int alive, int host_n) {
    if (alive <= 1) return true;
    std::vector<int> root(std::size_t(host_n), -1);
    auto find = [&](int x) {
        while (root[std::size_t(x)] != x) {
            root[std::size_t(x)] = root[std::size_t(root[std::size_t(x)])];
            x = root[std::size_t(x)];
        }
        return x;
    };
    int seen = 0;
    int comps = 0;
    for (const MultiEdge& e : edges) {
        for (int v : {e.a, e.b}) {
            if (root[std::size_t(v)] < 0) {
                root[std::size_t(v)] = v;
                ++seen;
                ++comps;
            }
        }
        int ra = find(e.a);
        int rb = find(e.b);
        if (ra != rb) {
            root[std::size_t(ra)] = rb;
            --comps;
        }
    }
    return seen == alive && comps == 1;
}

// Contraction/deletion split on the first edge. The include branch merges
// its endpoints and drops the loops that appear; the exclude branch only
// survives if the remainder still spans every live label.
void enumerate_rec(std::vector<MultiEdge> edges, int alive, int host_n,
                   std::vector<Edge>& chosen,
                   const std::function<void(const std::vector<Edge>&)>& visit) {
    if (alive == 1) {
        std::vector<Edge> tree = chosen;
        std::sort(tree.begin(), tree.end());
        visit(tree);
        return;
    }
    MultiEdge e = edges.front();

    {
        int keep = std::min(e.a, e.b);
        int gone = std::max(e.a, e.b);
        std::vector<MultiEdge> rest;
        rest.reserve(edges.size() - 1);
        for (std::size_t i = 1; i < edges.size(); ++i) {
            MultiEdge f = edges[i];
            if (f.a == gone) f.a = keep;
            if (f.b == gone) f.b = keep;
            if (f.a == f.b) continue;
            rest.push_back(f);
        }
        chosen.push_back(e.original);
        enumerate_rec(std::move(rest), alive - 1, host_n, chosen, visit);
        chosen.pop_back();
    }

    {
        std::vector<MultiEdge> rest(edges.begin() + 1, edges.end());
        if (multigraph_connected(rest, alive, host_n))
            enumerate_rec(std::move(rest), alive, host_n, chosen, visit);
    }
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::vector<int> local(std::size_t(g.n()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        local[std::size_t(vertices[i])] = int(i);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int a = local[std::size_t(e.first)];
        int b = local[std::size_t(e.second)];
        if (a >= 0 && b >= 0) edges.push_back(make_edge(a, b));
    }
    return Graph::from_edges(int(vertices.size()), edges);
}

}  // namespace

unsigned long long spanning_tree_count(const Graph& g) {
    // Bareiss keeps every intermediate an integer minor of the Laplacian;
    // Hadamard's bound keeps those inside __int128 up to this size.
    if (g.n() > 16)
        throw std::invalid_argument("graph too large for an exact tree count");
    if (g.n() == 0) return 0;
    if (g.n() == 1) return 1;

    int m = g.n() - 1;
    std::vector<std::vector<__int128>> a(std::size_t(m),
                                         std::vector<__int128>(std::size_t(m), 0));
    for (int u = 0; u < m; ++u) {
        a[std::size_t(u)][std::size_t(u)] = g.degree(u);
        for (int w : g.neighbors(u))
            if (w < m) a[std::size_t(u)][std::size_t(w)] = -1;
    }

    int sign = 1;
    __int128 prev = 1;
    for (int k = 0; k < m; ++k) {
        if (a[std::size_t(k)][std::size_t(k)] == 0) {
            int pivot = -1;
            for (int r = k + 1; r < m; ++r) {
                if (a[std::size_t(r)][std::size_t(k)] != 0) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) return 0;
            std::swap(a[std::size_t(k)], a[std::size_t(pivot)]);
            sign = -sign;
        }
        for (int r = k + 1; r < m; ++r) {
            for (int c = k + 1; c < m; ++c) {
                a[std::size_t(r)][std::size_t(c)] =
                    (a[std::size_t(r)][std::size_t(c)] * a[std::size_t(k)][std::size_t(k)] -
                     a[std::size_t(r)][std::size_t(k)] * a[std::size_t(k)][std::size_t(c)]) /
                    prev;
            }
        }
        prev = a[std::size_t(k)][std::size_t(k)];
    }

    __int128 det = a[std::size_t(m - 1)][std::size_t(m - 1)];
    if (sign < 0) det = -det;
    TREEDISC_CHECK(det >= 0);
    if (det > __int128(std::numeric_limits<unsigned long long>::max()))
        throw std::invalid_argument("graph too large for an exact tree count");
    return (unsigned long long)(det);
}

void enumerate_spanning_trees(const Graph& g,
                              const std::function<void(const std::vector<Edge>&)>& visit,
                              unsigned long long budget) {
    if (connected_components(g).size() != 1)
        throw std::invalid_argument("graph must be connected");
    unsigned long long total = spanning_tree_count(g);
    if (total > budget)
        throw std::runtime_error("spanning tree enumeration budget exceeded: " +
                                 std::to_string(total) + " trees");
    if (g.n() == 1) {
        std::vector<Edge> none;
        visit(none);
        return;
    }
    std::vector<MultiEdge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) edges.push_back({e.first, e.second, e});
    std::vector<Edge> chosen;
    enumerate_rec(std::move(edges), g.n(), g.n(), chosen, visit);
}

ForestOptimum max_discrepancy_forest_bruteforce(const Graph& g,
                                                const EdgeColoring& chi,
                                                double alpha_leaf_min) {
    int n = g.n();
    auto comps = connected_components(g);

    // Per component, the best leaf total for each achievable signed sum,
    // with one witness tree kept for rebuilding the argmax afterwards.
    struct SumEntry {
        int leaves = 0;
        std::vector<Edge> tree;
    };
    std::vector<std::map<long long, SumEntry>> tables;
    tables.reserve(comps.size());
    for (const auto& comp : comps) {
        std::map<long long, SumEntry> table;
        if (comp.size() == 1) {
            table[0] = SumEntry{};
        } else {
            Graph sub = induced_subgraph(g, comp);
            enumerate_spanning_trees(sub, [&](const std::vector<Edge>& local) {
                long long sum = 0;
                std::vector<int> deg(comp.size(), 0);
                std::vector<Edge> tree;
                tree.reserve(local.size());
                for (const Edge& e : local) {
                    Edge orig = make_edge(comp[std::size_t(e.first)],
                                          comp[std::size_t(e.second)]);
                    sum += chi.color(orig);
                    tree.push_back(orig);
                    ++deg[std::size_t(e.first)];
                    ++deg[std::size_t(e.second)];
                }
                int leaves = int(std::count(deg.begin(), deg.end(), 1));
                auto it = table.find(sum);
                if (it == table.end() || leaves > it->second.leaves)
                    table[sum] = SumEntry{leaves, std::move(tree)};
            });
        }
        tables.push_back(std::move(table));
    }

    // Combine components: dp[sum] = best reachable leaf total.
    const int offset = n;
    const int width = 2 * n + 1;
    std::vector<std::vector<int>> dp(tables.size() + 1, std::vector<int>(std::size_t(width), -1));
    std::vector<std::vector<long long>> pick(tables.size(),
                                             std::vector<long long>(std::size_t(width), 0));
    dp[0][std::size_t(offset)] = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        for (int s = 0; s < width; ++s) {
            if (dp[i][std::size_t(s)] < 0) continue;
            for (const auto& [sum, entry] : tables[i]) {
                int t = s + int(sum);
                TREEDISC_CHECK(t >= 0 && t < width);
                int leaves = dp[i][std::size_t(s)] + entry.leaves;
                if (leaves > dp[i + 1][std::size_t(t)]) {
                    dp[i + 1][std::size_t(t)] = leaves;
                    pick[i][std::size_t(t)] = sum;
                }
            }
        }
    }

    int need = int(std::ceil(alpha_leaf_min * n - 1e-9));
    if (need < 0) need = 0;

    bool found = false;
    long long best_sum = 0;
    int best_leaves = 0;
    for (int s = -(n > 0 ? n - 1 : 0); s <= (n > 0 ? n - 1 : 0); ++s) {
        int leaves = dp.back()[std::size_t(s + offset)];
        if (leaves < need) continue;
        long long cand = s;
        if (!found || std::llabs(cand) > std::llabs(best_sum) ||
            (std::llabs(cand) == std::llabs(best_sum) && cand > best_sum)) {
            found = true;
            best_sum = cand;
            best_leaves = leaves;
        }
    }
    if (!found)
        throw std::runtime_error("no spanning forest meets the leaf floor");

    ForestOptimum out;
    out.best_abs_sum = std::llabs(best_sum);
    out.best_leaf_count = best_leaves;
    out.witness.host_n = n;
    long long remaining = best_sum;
    for (std::size_t i = tables.size(); i-- > 0;) {
        long long si = pick[i][std::size_t(remaining + offset)];
        const SumEntry& entry = tables[i].at(si);
        out.witness.edges.insert(out.witness.edges.end(), entry.tree.begin(),
                                 entry.tree.end());
        remaining -= si;
    }
    TREEDISC_CHECK(remaining == 0);
    std::sort(out.witness.edges.begin(), out.witness.edges.end());
    return out;
}

int max_leaf_tree_bruteforce(const Graph& g) {
    int best = 0;
    enumerate_spanning_trees(g, [&](const std::vector<Edge>& edges) {
        std::vector<int> deg(std::size_t(g.n()), 0);
        for (const Edge& e : edges) {
            ++deg[std::size_t(e.first)];
            ++deg[std::size_t(e.second)];
        }
        best = std::max(best, int(std::count(deg.begin(), deg.end(), 1)));
    });
    return best;
}

namespace {

EdgeColoring uniform_coloring(const Graph& g, std::uint64_t seed) {
    EdgeColoring chi;
    Rng rng(seed);
    for (const Edge& e : g.edges())
        chi.set(e.first, e.second, rng.next_bool() ? 1 : -1);
    return chi;
}

// Greedy balancing: each edge takes the color that pushes the sum of its
// endpoints' incident colors toward zero, ties landing positive.
EdgeColoring balanced_local_coloring(const Graph& g) {
    EdgeColoring chi;
    std::vector<long long> incident(std::size_t(g.n()), 0);
    for (const Edge& e : g.edges()) {
        long long drift = incident[std::size_t(e.first)] + incident[std::size_t(e.second)];
        int c = drift > 0 ? -1 : 1;
        chi.set(e.first, e.second, c);
        incident[std::size_t(e.first)] += c;
        incident[std::size_t(e.second)] += c;
    }
    return chi;
}

// Cut coloring against the first-half/second-half vertex split: edges inside
// the low half are +1, everything crossing or inside the high half is -1.
EdgeColoring cut_coloring(const Graph& g) {
    EdgeColoring chi;
    int half = (g.n() + 1) / 2;
    for (const Edge& e : g.edges())
        chi.set(e.first, e.second, e.second < half ? 1 : -1);
    return chi;
}

EdgeColoring adaptive_recolor(const Graph& g, const AdversarySpec& spec) {
    if (spec.rounds < 1)
        throw std::invalid_argument("adaptive recoloring needs at least one round");
    EdgeColoring current = uniform_coloring(g, spec.seed);
    EdgeColoring best = current;
    long long best_disc = std::numeric_limits<long long>::max();
    Rng seeder(spec.seed);
    for (int round = 0; round < spec.rounds; ++round) {
        BoostParams bp;
        bp.alpha = spec.alpha;
        bp.delta = spec.delta;
        bp.seed = seeder.split(std::uint64_t(round) + 1).next_u64();
        DiscrepancyResult probe = boost_forest(g, current, bp);
        if (probe.abs_discrepancy < best_disc) {
            best_disc = probe.abs_discrepancy;
            best = current;
        }
        if (round + 1 == spec.rounds) break;

        // Every forest edge on the majority side of the achieved sum feeds
        // the surplus equally, so flip the first tenth of them in label order.
        int s = probe.signed_sum > 0 ? 1 : (probe.signed_sum < 0 ? -1 : 1);
        std::vector<Edge> aligned;
        for (const Edge& e : probe.forest.edges)
            if (current.color(e) == s) aligned.push_back(e);
        std::size_t quota = (probe.forest.edges.size() + 9) / 10;
        quota = std::min(quota, aligned.size());
        for (std::size_t i = 0; i < quota; ++i)
            current.set(aligned[i].first, aligned[i].second, -s);
    }
    return best;
}

}  // namespace

EdgeColoring make_coloring(const Graph& g, const AdversarySpec& spec) {
    switch (spec.kind) {
        case AdversaryKind::UniformRandom:
            return uniform_coloring(g, spec.seed);
        case AdversaryKind::BalancedLocal:
            return balanced_local_coloring(g);
        case AdversaryKind::CutColoring:
            return cut_coloring(g);
        case AdversaryKind::AdaptiveRecolor:
            return adaptive_recolor(g, spec);
    }
    throw std::invalid_argument("unknown adversary kind");
}

AdversaryKind parse_adversary(const std::string& name) {
    if (name == "uniformRandom") return AdversaryKind::UniformRandom;
    if (name == "balancedLocal") return AdversaryKind::BalancedLocal;
    if (name == "cutColoring") return AdversaryKind::CutColoring;
    if (name == "adaptiveRecolor") return AdversaryKind::AdaptiveRecolor;
    throw std::invalid_argument("unknown adversary: " + name);
}

std::string adversary_name(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::UniformRandom: return "uniformRandom";
        case AdversaryKind::BalancedLocal: return "balancedLocal";
        case AdversaryKind::CutColoring: return "cutColoring";
        case AdversaryKind::AdaptiveRecolor: return "adaptiveRecolor";
    }
    throw std::invalid_argument("unknown adversary kind");
}

}  // namespace treedisc
