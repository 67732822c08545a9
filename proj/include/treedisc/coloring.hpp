#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "treedisc/graph.hpp"

namespace treedisc {

// Two-coloring chi: E -> {+1, -1}. Lookup of an uncolored edge is a contract
// violation, not a default.
class EdgeColoring {
public:
    void set(int u, int v, int color) {
        if (color != 1 && color != -1)
            throw std::invalid_argument("edge color must be +1 or -1");
        map_[edge_key(make_edge(u, v))] = static_cast<std::int8_t>(color);
    }

    bool has(int u, int v) const {
        return map_.count(edge_key(make_edge(u, v))) > 0;
    }

    int color(int u, int v) const {
        auto it = map_.find(edge_key(make_edge(u, v)));
        if (it == map_.end())
            throw std::invalid_argument("edge has no color assigned");
        return it->second;
    }

    int color(const Edge& e) const { return color(e.first, e.second); }

    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<std::uint64_t, std::int8_t> map_;
};

} // namespace treedisc
