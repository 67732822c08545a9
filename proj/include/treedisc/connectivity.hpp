#pragma once

#include <optional>
#include <vector>

#include "treedisc/graph.hpp"

namespace treedisc {

// Smallest vertex cut of size <= d, if one exists. Complete graphs have no
// cut at all and always yield nullopt. The returned set is a true minimum
// among cuts of size <= d, sorted ascending. Wants a connected graph with
// more than d + 1 vertices; anything smaller is rejected.
std::optional<std::vector<int>> vertex_cut_upto(const Graph& g, int d);

// Connected with no cut of size <= 2. Rejects graphs below 4 vertices, where
// the notion degenerates.
bool is_three_connected(const Graph& g);

} // namespace treedisc
