#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "treedisc/coloring.hpp"
#include "treedisc/graph.hpp"

namespace treedisc {

// Plain-text edge list. Layout:
//   # comment lines anywhere
//   n <vertex count>      (required, before any edge)
//   u v                   (uncolored edge)
//   u v +1 | u v -1       (colored edge)
// Either every edge carries a color or none does; mixing is an error, as are
// out-of-range endpoints, loops, and duplicate edges.
struct EdgeListFile {
    Graph graph;
    std::optional<EdgeColoring> coloring;
};

EdgeListFile load_edge_list(std::istream& in);
EdgeListFile load_edge_list_file(const std::string& path);

void save_edge_list(std::ostream& out, const Graph& g,
                    const EdgeColoring* coloring = nullptr);
void save_edge_list_file(const std::string& path, const Graph& g,
                         const EdgeColoring* coloring = nullptr);

} // namespace treedisc
