#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "treedisc/experiment.hpp"

namespace {

// Exit codes: 0 all trials ran, 1 the config was unusable, 2 the output
// could not be written. Missed thresholds are rows in the table, not errors.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kIoError = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spanning-structure experiment runner"};

    std::string mode = "leaves";
    treedisc::ExperimentConfig cfg;
    std::optional<double> p_prob, c_over_n, f_over_n2;
    std::optional<double> p2_prob, c2_over_n;
    std::string adversary = "uniformRandom";
    std::string out_path;
    std::string format = "csv";

    app.add_option("--mode", mode,
                   "leaves | two-phase | boost | main1 | perturb | sharpness | oracle-check");
    app.add_option("--n", cfg.n, "vertex count of generated instances");
    auto* popt = app.add_option("--p", p_prob, "edge probability");
    auto* copt = app.add_option("--c-over-n", c_over_n, "edge probability as C/n");
    auto* fopt = app.add_option("--f-over-n2", f_over_n2, "edge probability as f/n^2");
    popt->excludes(copt)->excludes(fopt);
    copt->excludes(fopt);
    auto* p2opt = app.add_option("--p2", p2_prob, "second-layer edge probability");
    auto* c2opt = app.add_option("--c2-over-n", c2_over_n, "second layer as C/n");
    p2opt->excludes(c2opt);
    app.add_option("--alpha", cfg.alpha, "leaf floor / degree floor fraction");
    app.add_option("--delta", cfg.delta, "pendant class size fraction");
    app.add_option("--target-leaf", cfg.target_leaf_fraction,
                   "leaf fraction the growth phases aim for");
    app.add_option("--c1", cfg.c1, "discrepancy target scale constant");
    app.add_option("--adversary", adversary,
                   "uniformRandom | balancedLocal | cutColoring | adaptiveRecolor");
    app.add_option("--rounds", cfg.adversary.rounds,
                   "adaptive adversary probe rounds");
    app.add_option("--trials", cfg.trials, "independent runs");
    app.add_option("--seed", cfg.seed, "base seed; trial k runs on seed + k");
    app.add_option("--threads", cfg.threads, "worker threads");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json");
    app.add_flag("--timing", cfg.timing,
                 "fill runtimeMs (off keeps output byte-stable)");
    app.add_option("--graph-in", cfg.graph_in, "fixed instance, edge-list file");
    app.add_option("--coloring-in", cfg.coloring_in,
                   "fixed coloring, colored edge-list file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    treedisc::ResultTable table;
    try {
        cfg.mode = treedisc::parse_mode(mode);
        cfg.adversary.kind = treedisc::parse_adversary(adversary);
        if (p_prob) cfg.p = {treedisc::PSpec::Form::Probability, *p_prob};
        if (c_over_n) cfg.p = {treedisc::PSpec::Form::COverN, *c_over_n};
        if (f_over_n2) cfg.p = {treedisc::PSpec::Form::FOverN2, *f_over_n2};
        if (p2_prob) cfg.p2 = {treedisc::PSpec::Form::Probability, *p2_prob};
        if (c2_over_n) cfg.p2 = {treedisc::PSpec::Form::COverN, *c2_over_n};
        if (format != "csv" && format != "json")
            throw std::invalid_argument("unknown output format: " + format);

        table = treedisc::run_experiment(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (out_path.empty()) {
            treedisc::write_table(std::cout, table, format);
            if (!std::cout) throw std::runtime_error("stdout write failed");
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + out_path);
            treedisc::write_table(out, table, format);
            if (!out) throw std::runtime_error("write failed: " + out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kOk;
}
