#pragma once

#include <cstddef>
#include <cstdint>

#include "surfex/graph.hpp"

namespace surfex {

// Erdos-Gallai test.
bool is_graphical(const DegreeSequence& pi);
// Throws PreconditionError when pi is not graphical.
Graph havel_hakimi(const DegreeSequence& pi);

std::uint64_t w3_of(const Graph& h); // sum over edges 2 d(u) d(v)

struct W3SearchOptions {
    enum class Strategy {
        automatic,    // exhaustive when at most 8 vertices have degree != 2
        exhaustive,
        local_search, // double-edge-swap hill climbing with restarts
    };
    Strategy strategy = Strategy::automatic;
    std::size_t restarts = 200;
    std::uint64_t seed = 1;
    std::size_t max_exhaustive_special = 8;
    enum class Realizations {
        all,
        connected,
        no_isolated_edge, // no K2 component, i.e. no two adjacent 1-vertices
    };
    Realizations realizations = Realizations::all;
};

struct W3SearchResult {
    std::uint64_t w3 = 0;
    Graph witness;
    bool exhaustive = false;   // true: w3 is the exact maximum
    std::size_t restarts_run = 0;
};

// Largest w^(3) over realizations of pi found by the chosen strategy. The
// exhaustive path enumerates how the non-2 vertices are joined, either
// directly or through chains of 2-vertices, which fixes w^(3) exactly; it is
// seeded with the local-search value as a pruning floor.
W3SearchResult max_w3_degseq(const DegreeSequence& pi, const W3SearchOptions& opts = {});

// Tabulated cases on n - 2 vertices, padded with 2s:
//   1: (4,4,3,3,2..,1,1)    8n + 106
//   2: (5,5,4,4,4,2..,1,1)  8n + 346
//   3: (5,5,5,3,3,3,2..,1,1) 8n + 340
//   4: (6,4,4,4,3,3,2..,1,1) 8n + 332
struct W3Case {
    DegreeSequence pi;
    std::uint64_t tabulated = 0;
};
W3Case w3_case(int which, std::size_t n);

} // namespace surfex
