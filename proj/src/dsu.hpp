#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace treedisc {

// Union-find with path halving. Internal helper, not part of the API.
struct Dsu {
    std::vector<int> parent;

    explicit Dsu(int n) : parent(std::size_t(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[std::size_t(x)] != x) {
            parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
            x = parent[std::size_t(x)];
        }
        return x;
    }

    // False when x and y already share a set.
    bool unite(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) return false;
        parent[std::size_t(rx)] = ry;
        return true;
    }
};

} // namespace treedisc
