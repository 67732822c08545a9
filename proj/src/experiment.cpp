#include "treedisc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"

#include "treedisc/check.hpp"
#include "treedisc/discrepancy.hpp"
#include "treedisc/edge_io.hpp"
#include "treedisc/leafy.hpp"
#include "treedisc/perturb.hpp"
#include "treedisc/rng.hpp"

namespace treedisc {

Mode parse_mode(const std::string& s) {
    if (s == "leaves") return Mode::Leaves;
    if (s == "two-phase") return Mode::TwoPhase;
    if (s == "boost") return Mode::Boost;
    if (s == "main1") return Mode::Main1;
    if (s == "perturb") return Mode::Perturb;
    if (s == "sharpness") return Mode::Sharpness;
    if (s == "oracle-check") return Mode::OracleCheck;
    throw std::invalid_argument("unknown mode: " + s);
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Leaves: return "leaves";
        case Mode::TwoPhase: return "two-phase";
        case Mode::Boost: return "boost";
        case Mode::Main1: return "main1";
        case Mode::Perturb: return "perturb";
        case Mode::Sharpness: return "sharpness";
        case Mode::OracleCheck: return "oracle-check";
    }
    throw std::invalid_argument("unknown mode");
}

double PSpec::resolve(int n) const {
    if (n <= 0) throw std::invalid_argument("n must be positive");
    double p = 0.0;
    switch (form) {
        case Form::Probability: p = value; break;
        case Form::COverN: p = value / n; break;
        case Form::FOverN2: p = value / (double(n) * double(n)); break;
    }
    if (!(p >= 0.0) || p > 1.0)
        throw std::invalid_argument("edge density must land in [0, 1]");
    return p;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string fmt(long long v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string fmt(int v) { return fmt((long long)(v)); }

std::string fmt(std::uint64_t v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string fmt(bool v) { return v ? "1" : "0"; }

// The epsilon the boost pipeline is held to in summaries; row data is kept
// regardless.
constexpr double kBoostEpsilonTarget = 0.01;
constexpr double kCoverTarget = 0.5;

struct TrialOutcome {
    std::vector<std::string> cells;
    bool success = false;
};

std::vector<std::string> columns_for(Mode m) {
    switch (m) {
        case Mode::Leaves:
            return {"trial", "seed", "n", "p", "giantN", "leafCount",
                    "leafFraction", "success", "runtimeMs"};
        case Mode::TwoPhase:
            return {"trial", "seed", "n", "p", "p2", "giantN", "t1Leaves",
                    "t2Leaves", "coverCount", "coverFraction", "success",
                    "runtimeMs"};
        case Mode::Boost:
            return {"trial", "seed", "n", "p", "delta", "alpha", "adversary",
                    "leafCount", "leafFraction", "signedSum", "absDiscrepancy",
                    "epsilonAchieved", "swapsApplied", "caseTag", "runtimeMs"};
        case Mode::Main1:
            return {"trial", "seed", "n", "p", "p2", "treeN", "signedSum",
                    "absDiscrepancy", "majorityCount", "connectorEdges",
                    "success", "runtimeMs"};
        case Mode::Perturb:
            return {"trial", "seed", "n", "p", "alpha", "d", "uSize",
                    "partCount", "valid", "certifiedBound", "reason",
                    "success", "runtimeMs"};
        case Mode::Sharpness:
            return {"trial", "seed", "n", "p", "alpha", "lambda", "targetDisc",
                    "absDiscrepancy", "swapsApplied", "success", "runtimeMs"};
        case Mode::OracleCheck:
            return {"trial", "seed", "n", "p", "boostAbs", "oracleAbs",
                    "boostLeaves", "leafAttained", "success", "runtimeMs"};
    }
    throw std::invalid_argument("unknown mode");
}

TrialOutcome run_leaves(const ExperimentConfig& cfg, int trial,
                        const Graph* fixed) {
    std::uint64_t ts = cfg.seed + std::uint64_t(trial);
    Rng base(ts);
    double pv = fixed ? 0.0 : cfg.p.resolve(cfg.n);
    Graph g = fixed ? *fixed
                    : gen_gnp({cfg.n, pv, base.split(1).next_u64()});
    auto comps = connected_components(g);
    const auto& giant = comps.front();

    Rng tree_rng = base.split(2);
    Tree start = spanning_tree_arbitrary(g, tree_rng, giant.front());
    LeafRunParams lp;
    lp.target_leaf_fraction = cfg.target_leaf_fraction;
    lp.seed = base.split(3).next_u64();
    Tree t = leaf_increase(g, start, lp);

    int leaves = tree_leaf_count(t);
    double frac = double(leaves) / double(giant.size());
    TrialOutcome o;
    o.success = frac >= cfg.target_leaf_fraction - 1e-12;
    o.cells = {fmt(trial),  fmt(ts),    fmt(g.n()),  fmt(pv),
               fmt(int(giant.size())),  fmt(leaves), fmt(frac),
               fmt(o.success)};
    return o;
}

TrialOutcome run_two_phase(const ExperimentConfig& cfg, int trial) {
    std::uint64_t ts = cfg.seed + std::uint64_t(trial);
    Rng base(ts);
    double p1v = cfg.p.resolve(cfg.n);
    double p2v = (cfg.p2 ? *cfg.p2 : cfg.p).resolve(cfg.n);
    Graph g1 = gen_gnp({cfg.n, p1v, base.split(1).next_u64()});
    Graph g2 = gen_gnp({cfg.n, p2v, base.split(2).next_u64()});

    LeafRunParams ph1;
    ph1.target_leaf_fraction = cfg.target_leaf_fraction;
    ph1.seed = base.split(3).next_u64();
    LeafRunParams ph2 = ph1;
    ph2.seed = base.split(4).next_u64();
    TwoPhaseResult res = two_phase_leafy_tree(g1, g2, ph1, ph2);

    int giant_n = int(res.tree.size());
    double cover_frac = double(res.cover_count) / double(giant_n);
    TrialOutcome o;
    o.success = cover_frac >= kCoverTarget - 1e-12;
    o.cells = {fmt(trial),           fmt(ts),
               fmt(cfg.n),           fmt(p1v),
               fmt(p2v),             fmt(giant_n),
               fmt(res.t1_leaf_count), fmt(res.t2_leaf_count),
               fmt(res.cover_count), fmt(cover_frac),
               fmt(o.success)};
    return o;
}

TrialOutcome run_boost(const ExperimentConfig& cfg, int trial,
                       const Graph* fixed, const EdgeColoring* fixed_chi) {
    std::uint64_t ts = cfg.seed + std::uint64_t(trial);
    Rng base(ts);
    int n = fixed ? fixed->n() : cfg.n;
    double pv = fixed ? 0.0 : cfg.p.resolve(n);
    Graph g = fixed ? *fixed : gen_gnp({n, pv, base.split(1).next_u64()});

    EdgeColoring chi;
    if (fixed_chi) {
        chi = *fixed_chi;
    } else {
        AdversarySpec spec = cfg.adversary;
        spec.seed = base.split(2).next_u64();
        spec.delta = cfg.delta;
        spec.alpha = cfg.alpha;
        chi = make_coloring(g, spec);
    }

    BoostParams bp;
    bp.alpha = cfg.alpha;
    bp.delta = cfg.delta;
    bp.seed = base.split(3).next_u64();
    DiscrepancyResult res = boost_forest(g, chi, bp);

    double leaf_frac = double(res.leaf_count) / double(n);
    TrialOutcome o;
    o.success = res.abs_discrepancy >= kBoostEpsilonTarget * n - 1e-9 &&
                res.leaf_count >= cfg.alpha * n - 1e-9;
    o.cells = {fmt(trial),
               fmt(ts),
               fmt(n),
               fmt(pv),
               fmt(cfg.delta),
               fmt(cfg.alpha),
               adversary_name(cfg.adversary.kind),
               fmt(res.leaf_count),
               fmt(leaf_frac),
               fmt(res.signed_sum),
               fmt(res.abs_discrepancy),
               fmt(res.epsilon_achieved),
               fmt(res.swaps_applied),
               fmt(res.case_tag)};
    return o;
}

TrialOutcome run_main1(const ExperimentConfig& cfg, int trial) {
    std::uint64_t ts = cfg.seed + std::uint64_t(trial);
    Rng base(ts);
    double p1v = cfg.p.resolve(cfg.n);
    double p2v = (cfg.p2 ? *cfg.p2 : cfg.p).resolve(cfg.n);
    Graph g1 = gen_gnp({cfg.n, p1v, base.split(1).next_u64()});
    Graph g2 = gen_gnp({cfg.n, p2v, base.split(2).next_u64()});
    Graph whole = union_graphs(g1, g2);

    AdversarySpec spec = cfg.adversary;
    spec.seed = base.split(3).next_u64();
    spec.delta = cfg.delta;
    spec.alpha = cfg.alpha;
    EdgeColoring chi = make_coloring(whole, spec);

    BoostParams bp;
    bp.alpha = cfg.alpha;
    bp.delta = cfg.delta;
    bp.seed = base.split(4).next_u64();
    HighDiscResult res = high_disc_spanning_tree(g1, g2, chi, bp);

    bool spanning = int(res.tree.size()) == whole.n();
    double majority_target = 0.5 * double(cfg.n - 1) + 0.004 * double(cfg.n);
    TrialOutcome o;
    o.success = spanning && double(res.majority_count) > majority_target;
    o.cells = {fmt(trial),          fmt(ts),
               fmt(cfg.n),          fmt(p1v),
               fmt(p2v),            fmt(int(res.tree.size())),
               fmt(res.signed_sum), fmt(res.abs_discrepancy),
               fmt(res.majority_count), fmt(res.connector_edges),
               fmt(o.success)};
    return o;
}

// Dense base for the certificate runs: disjoint cliques just over the degree
// floor, any leftover vertices folded into the last one.
Graph clique_union_base(int n, double alpha) {
    int k = int(std::ceil(alpha * n - 1e-9)) + 1;
    if (k > n) throw std::invalid_argument("alpha leaves no room for a clique");
    int blocks = n / k;
    std::vector<Edge> edges;
    for (int b = 0; b < blocks; ++b) {
        int lo = b * k;
        int hi = (b + 1 == blocks) ? n : (b + 1) * k;
        for (int u = lo; u < hi; ++u)
            for (int v = u + 1; v < hi; ++v) edges.push_back(make_edge(u, v));
    }
    return Graph::from_edges(n, edges);
}

TrialOutcome run_perturb(const ExperimentConfig& cfg, int trial,
                         const Graph* fixed) {
    std::uint64_t ts = cfg.seed + std::uint64_t(trial);
    Rng base(ts);
    int n = fixed ? fixed->n() : cfg.n;
    double pv = fixed ? 0.0 : cfg.p.resolve(n);
    Graph h = fixed ? *fixed
                    : union_graphs(clique_union_base(n, cfg.alpha),
                                   gen_gnp({n, pv, base.split(1).next_u64()}));

    PerturbParams pp = PerturbParams::derive(n, cfg.alpha, fixed ? cfg.p.value : pv,
                                             cfg.c1);
    SeparationCertificate cert = certify_separation_bound(h, pp);

    TrialOutcome o;
    o.success = cert.valid;
    o.cells = {fmt(trial),        fmt(ts),
               fmt(n),            fmt(pv),
               fmt(cfg.alpha),    fmt(cert.d),
               fmt(int(cert.u.size())), fmt(int(cert.parts.size())),
               fmt(cert.valid),   fmt(cert.certified_bound),
               cert.reason,       fmt(o.success)};
    return o;
}

TrialOutcome run_sharpness(const ExperimentConfig& cfg, int trial) {
    std::uint64_t ts = cfg.seed + std::uint64_t(trial);
    Rng base(ts);
    double pv = cfg.p.resolve(cfg.n);
    auto [g, chi] = sharpness_instance(cfg.n, cfg.alpha, pv,
                                       base.split(1).next_u64());
    PerturbParams pp = PerturbParams::derive(cfg.n, cfg.alpha, pv, cfg.c1);
    DiscrepancyResult res =
        perturbed_discrepancy_tree(g, chi, pp, base.split(2).next_u64());

    double target = pp.lambda * pv * double(cfg.n) * double(cfg.n);
    TrialOutcome o;
    o.success = double(res.abs_discrepancy) >= target - 1e-9;
    o.cells = {fmt(trial),      fmt(ts),
               fmt(cfg.n),      fmt(pv),
               fmt(cfg.alpha),  fmt(pp.lambda),
               fmt(target),     fmt(res.abs_discrepancy),
               fmt(res.swaps_applied), fmt(o.success)};
    return o;
}

TrialOutcome run_oracle_check(const ExperimentConfig& cfg, int trial) {
    std::uint64_t ts = cfg.seed + std::uint64_t(trial);
    Rng base(ts);
    // Corpus sizes cycle through what exhaustive enumeration can afford.
    int nn = 5 + trial % 3;
    const double pv = 0.6;
    Graph g;
    for (std::uint64_t attempt = 0;; ++attempt) {
        g = gen_gnp({nn, pv, base.split(100 + attempt).next_u64()});
        if (connected_components(g).size() == 1) break;
    }
    AdversarySpec spec;
    spec.kind = AdversaryKind::UniformRandom;
    spec.seed = base.split(5).next_u64();
    EdgeColoring chi = make_coloring(g, spec);

    BoostParams bp;
    bp.alpha = cfg.alpha;
    bp.delta = cfg.delta;
    bp.seed = base.split(6).next_u64();
    DiscrepancyResult boosted = boost_forest(g, chi, bp);
    ForestOptimum oracle = max_discrepancy_forest_bruteforce(g, chi, cfg.alpha);

    int need = int(std::ceil(cfg.alpha * nn - 1e-9));
    bool feasible = boosted.leaf_count >= need;
    bool violation = feasible && boosted.abs_discrepancy > oracle.best_abs_sum;

    Rng tree_rng = base.split(7);
    Tree start = spanning_tree_arbitrary(g, tree_rng);
    LeafRunParams lp;
    lp.target_leaf_fraction = 0.99;
    lp.max_steps_factor = 100.0;
    lp.seed = base.split(8).next_u64();
    Tree t = leaf_increase(g, start, lp);
    bool attained = tree_leaf_count(t) == max_leaf_tree_bruteforce(g);

    TrialOutcome o;
    o.success = !violation;
    o.cells = {fmt(trial), fmt(ts),
               fmt(nn),    fmt(pv),
               fmt(boosted.abs_discrepancy), fmt(oracle.best_abs_sum),
               fmt(boosted.leaf_count),      fmt(attained),
               fmt(o.success)};
    return o;
}

TrialOutcome run_trial(const ExperimentConfig& cfg, int trial,
                       const Graph* fixed, const EdgeColoring* fixed_chi) {
    auto start = std::chrono::steady_clock::now();
    TrialOutcome o;
    switch (cfg.mode) {
        case Mode::Leaves: o = run_leaves(cfg, trial, fixed); break;
        case Mode::TwoPhase: o = run_two_phase(cfg, trial); break;
        case Mode::Boost: o = run_boost(cfg, trial, fixed, fixed_chi); break;
        case Mode::Main1: o = run_main1(cfg, trial); break;
        case Mode::Perturb: o = run_perturb(cfg, trial, fixed); break;
        case Mode::Sharpness: o = run_sharpness(cfg, trial); break;
        case Mode::OracleCheck: o = run_oracle_check(cfg, trial); break;
    }
    long long ms = 0;
    if (cfg.timing) {
        auto end = std::chrono::steady_clock::now();
        ms = std::chrono::duration_cast<std::chrono::milliseconds>(end - start)
                 .count();
    }
    o.cells.push_back(fmt(ms));
    return o;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1)
        throw std::invalid_argument("at least one trial is required");
    if (cfg.threads < 1)
        throw std::invalid_argument("at least one thread is required");
    if (cfg.graph_in.empty() && cfg.n < 1)
        throw std::invalid_argument("n must be positive");
    if (!cfg.coloring_in.empty() && cfg.graph_in.empty())
        throw std::invalid_argument("a fixed coloring needs a fixed graph");
    bool takes_graph = cfg.mode == Mode::Leaves || cfg.mode == Mode::Boost ||
                       cfg.mode == Mode::Perturb;
    if (!cfg.graph_in.empty() && !takes_graph)
        throw std::invalid_argument("this mode generates its own instances");
    if (!cfg.coloring_in.empty() && cfg.mode != Mode::Boost)
        throw std::invalid_argument("only boost mode takes a fixed coloring");

    std::optional<EdgeListFile> fixed;
    std::optional<EdgeColoring> fixed_chi;
    if (!cfg.graph_in.empty()) {
        fixed = load_edge_list_file(cfg.graph_in);
        if (fixed->coloring) fixed_chi = fixed->coloring;
    }
    if (!cfg.coloring_in.empty()) {
        EdgeListFile cf = load_edge_list_file(cfg.coloring_in);
        if (!cf.coloring)
            throw std::invalid_argument("coloring file carries no colors");
        fixed_chi = std::move(cf.coloring);
    }
    const Graph* fixed_g = fixed ? &fixed->graph : nullptr;
    const EdgeColoring* chi_ptr = fixed_chi ? &*fixed_chi : nullptr;

    std::vector<TrialOutcome> outcomes(std::size_t(cfg.trials));
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    auto work = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= cfg.trials) return;
            try {
                outcomes[std::size_t(i)] = run_trial(cfg, i + 1, fixed_g, chi_ptr);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };

    int thread_count = std::min(cfg.threads, cfg.trials);
    if (thread_count <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(thread_count));
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);

    ResultTable table;
    table.columns = columns_for(cfg.mode);
    int successes = 0;
    for (auto& o : outcomes) {
        TREEDISC_CHECK(o.cells.size() == table.columns.size());
        successes += o.success ? 1 : 0;
        table.rows.push_back(std::move(o.cells));
    }
    table.success_fraction = double(successes) / double(cfg.trials);
    return table;
}

std::map<std::string, ColumnSummary> summarize(const ResultTable& table) {
    if (table.rows.empty())
        throw std::invalid_argument("nothing to summarize");
    std::map<std::string, ColumnSummary> out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        std::vector<double> values;
        values.reserve(table.rows.size());
        bool numeric = true;
        for (const auto& row : table.rows) {
            TREEDISC_CHECK(c < row.size());
            const std::string& cell = row[c];
            double v = 0.0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
                numeric = false;
                break;
            }
            values.push_back(v);
        }
        if (!numeric) continue;

        ColumnSummary s;
        s.min = values.front();
        s.max = values.front();
        double sum = 0.0;
        for (double v : values) {
            sum += v;
            s.min = std::min(s.min, v);
            s.max = std::max(s.max, v);
        }
        s.mean = sum / double(values.size());
        double var = 0.0;
        for (double v : values) var += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(var / double(values.size()));
        out[table.columns[c]] = s;
    }
    return out;
}

void write_table(std::ostream& out, const ResultTable& table,
                 const std::string& format) {
    auto stats = summarize(table);
    if (format == "csv") {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out << ',';
            out << table.columns[c];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ',';
                out << row[c];
            }
            out << '\n';
        }
        for (const auto& col : table.columns) {
            auto it = stats.find(col);
            if (it == stats.end()) continue;
            out << "# " << col << " mean=" << fmt(it->second.mean)
                << " stddev=" << fmt(it->second.stddev)
                << " min=" << fmt(it->second.min)
                << " max=" << fmt(it->second.max) << '\n';
        }
        out << "# successFraction=" << fmt(table.success_fraction) << '\n';
    } else if (format == "json") {
        nlohmann::ordered_json j;
        j["columns"] = table.columns;
        j["rows"] = table.rows;
        nlohmann::ordered_json summary;
        for (const auto& col : table.columns) {
            auto it = stats.find(col);
            if (it == stats.end()) continue;
            nlohmann::ordered_json s;
            s["mean"] = it->second.mean;
            s["stddev"] = it->second.stddev;
            s["min"] = it->second.min;
            s["max"] = it->second.max;
            summary[col] = s;
        }
        summary["successFraction"] = table.success_fraction;
        j["summary"] = summary;
        out << j.dump(2) << '\n';
    } else {
        throw std::invalid_argument("unknown output format: " + format);
    }
}

}  // namespace treedisc
