#pragma once

// Shared fixtures: the worked set-packing example with universe {a..y} and
// the 8-vertex host graph used by the graph pipelines, plus small builders.

#include <map>
#include <string>
#include <vector>

#include "opk/core.hpp"
#include "opk/gadgets.hpp"

namespace fixtures {

using opk::Edge;
using opk::Graph;
using opk::GraphFamily;
using opk::GraphInstance;
using opk::GraphVariant;
using opk::SetInstance;
using opk::SetMode;
using opk::Subgraph;

inline SetInstance make_set_instance(const std::vector<std::string>& universe,
                                     const std::vector<std::vector<std::string>>& sets, int r,
                                     int t, int k, SetMode mode) {
    SetInstance inst;
    inst.universe = universe;
    std::sort(inst.universe.begin(), inst.universe.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < inst.universe.size(); ++i)
        index[inst.universe[i]] = static_cast<int>(i);
    for (const auto& s : sets) {
        std::vector<int> out;
        for (const auto& e : s) out.push_back(index.at(e));
        std::sort(out.begin(), out.end());
        inst.sets.push_back(std::move(out));
    }
    std::sort(inst.sets.begin(), inst.sets.end());
    inst.r = r;
    inst.t = t;
    inst.k = k;
    inst.mode = mode;
    inst.validate();
    return inst;
}

inline std::vector<std::string> letters(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

inline std::vector<std::vector<std::string>> worked_example_sets() {
    return {{"a", "b", "c", "e"}, {"b", "c", "d", "e"}, {"e", "f", "g", "i"},
            {"a", "e", "f", "i"}, {"e", "g", "i", "h"}, {"i", "j", "n", "m"},
            {"i", "j", "m", "k"}, {"i", "j", "m", "l"}, {"o", "q", "n", "p"},
            {"q", "p", "r", "s"}, {"q", "p", "t", "u"}, {"q", "p", "u", "v"},
            {"q", "p", "v", "w"}, {"q", "p", "x", "y"}};
}

// The 25-element, 14-set instance; r=4, k=2. Most fixtures use t=1, where
// the counting rule removes exactly one set; t stays a parameter so the
// t=2 reading can be exercised too.
inline SetInstance worked_example_instance(int t) {
    return make_set_instance(letters(25), worked_example_sets(), 4, t, 2, SetMode::overlap);
}

// A hand-picked maximal (4,2)-packing of the instance above.
inline std::vector<std::vector<std::string>> worked_example_R() {
    return {{"b", "c", "d", "e"}, {"e", "f", "g", "i"}, {"i", "j", "n", "m"},
            {"o", "n", "p", "q"}, {"q", "p", "r", "s"}, {"q", "p", "t", "u"},
            {"q", "p", "v", "w"}, {"q", "p", "x", "y"}};
}

// Host graph on vertices a..h = 0..7: a 4-cycle a-b-c-d, a 4-cycle b-g-h-c,
// and a K4 on {b,c,e,f}.
inline Graph host_graph() {
    return Graph::from_edges(8, {{0, 1}, {0, 3}, {1, 2}, {2, 3},    // a-b-c-d cycle
                                 {1, 6}, {6, 7}, {2, 7},            // b-g-h-c cycle
                                 {1, 4}, {4, 5}, {2, 5}, {2, 4}, {1, 5}});  // K4 on b,c,e,f
}

inline GraphFamily c4_k4_family() { return GraphFamily{{opk::make_cycle(4), opk::make_clique(4)}}; }

inline GraphFamily c4_family() { return GraphFamily{{opk::make_cycle(4)}}; }

// The three-subgraph witness with identical vertex sets allowed (t=3):
// a C4 and the K4 on {b,c,e,f}, plus the C4 on {a,b,c,d}.
inline std::vector<Subgraph> isv_witness() {
    return {
        Subgraph{{1, 2, 4, 5}, {{1, 2}, {1, 4}, {2, 5}, {4, 5}}},
        Subgraph{{0, 1, 2, 3}, {{0, 1}, {0, 3}, {1, 2}, {2, 3}}},
        Subgraph{{1, 2, 4, 5}, {{1, 2}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {4, 5}}},
    };
}

// Three C4s on pairwise distinct vertex sets sharing the edge b-c twice.
inline std::vector<Subgraph> nisv_witness() {
    return {
        Subgraph{{0, 1, 2, 3}, {{0, 1}, {0, 3}, {1, 2}, {2, 3}}},
        Subgraph{{1, 2, 4, 5}, {{1, 4}, {1, 5}, {2, 4}, {2, 5}}},
        Subgraph{{1, 2, 6, 7}, {{1, 2}, {1, 6}, {2, 7}, {6, 7}}},
    };
}

}  // namespace fixtures
