#include "treedisc/edge_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace treedisc {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
}

} // namespace

EdgeListFile load_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool have_n = false;
    int n = 0;
    std::vector<Edge> edges;
    EdgeColoring coloring;
    int colored = -1;  // -1 undecided, then 0 or 1 for the whole file

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok) || tok[0] == '#') continue;

        if (!have_n) {
            if (tok != "n") fail(line_no, "expected the 'n <count>' header first");
            if (!(ss >> n) || n < 0) fail(line_no, "bad vertex count");
            std::string extra;
            if (ss >> extra) fail(line_no, "trailing tokens after header");
            have_n = true;
            continue;
        }

        int u, v;
        std::istringstream es(line);
        if (!(es >> u >> v)) fail(line_no, "expected two endpoints");
        std::string color_tok;
        bool has_color = bool(es >> color_tok);
        std::string extra;
        if (es >> extra) fail(line_no, "trailing tokens after edge");

        if (colored == -1)
            colored = has_color ? 1 : 0;
        else if (colored != (has_color ? 1 : 0))
            fail(line_no, "colored and uncolored edges mixed");

        if (u < 0 || v < 0 || u >= n || v >= n) fail(line_no, "endpoint out of range");
        if (u == v) fail(line_no, "loop edge");
        edges.push_back(make_edge(u, v));

        if (has_color) {
            int c;
            if (color_tok == "+1" || color_tok == "1")
                c = 1;
            else if (color_tok == "-1")
                c = -1;
            else
                fail(line_no, "edge color must be +1 or -1");
            if (coloring.has(u, v)) fail(line_no, "duplicate edge");
            coloring.set(u, v, c);
        }
    }

    if (!have_n) throw std::runtime_error("edge list: missing 'n <count>' header");

    EdgeListFile out;
    try {
        out.graph = Graph::from_edges(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("edge list: ") + e.what());
    }
    if (colored == 1) out.coloring = std::move(coloring);
    return out;
}

EdgeListFile load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in);
}

void save_edge_list(std::ostream& out, const Graph& g, const EdgeColoring* coloring) {
    out << "n " << g.n() << "\n";
    for (const auto& e : g.edges()) {
        out << e.first << " " << e.second;
        if (coloring) out << " " << (coloring->color(e) > 0 ? "+1" : "-1");
        out << "\n";
    }
}

void save_edge_list_file(const std::string& path, const Graph& g,
                         const EdgeColoring* coloring) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    save_edge_list(out, g, coloring);
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace treedisc
