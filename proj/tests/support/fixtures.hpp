#pragma once

#include <vector>

#include "symctrl/pattern.hpp"

namespace symctrl::testing {

// The 10-state, 2-input undirected network used throughout the tests,
// written out independently of the JSON loader. 1-based pairs.
inline StructuredPattern example_pattern(bool with_inputs = true) {
    const std::vector<std::pair<Index, Index>> edges{{1, 2}, {1, 4}, {1, 5}, {2, 3}, {3, 4}, {5, 7},
                                                     {6, 6}, {6, 7}, {7, 9}, {8, 9}, {9, 10}};
    const std::vector<std::pair<Index, Index>> inputs{{2, 1}, {1, 2}, {5, 2}};
    std::vector<Entry> a;
    for (auto [i, j] : edges) {
        a.push_back({i - 1, j - 1});
    }
    std::vector<Entry> b;
    if (with_inputs) {
        for (auto [state, input] : inputs) {
            b.push_back({state - 1, input - 1});
        }
    }
    return StructuredPattern::symmetric(10, with_inputs ? 2 : 0, a, b);
}

inline std::vector<Index> zero_based(std::vector<Index> one_based) {
    for (auto& x : one_based) {
        --x;
    }
    return one_based;
}

} // namespace symctrl::testing
