#pragma once

#include <cstddef>

#include "surfex/graph.hpp"

namespace surfex {

// Labelling conventions: vertices are numbered in the order listed in each
// description. Operands of join/disjoint_union keep their ids, the second
// operand shifted by the order of the first.

Graph path_graph(std::size_t n);          // 0-1-...-(n-1)
Graph cycle_graph(std::size_t n);         // n >= 3
Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);         // n isolated vertices
Graph complete_bipartite(std::size_t s, std::size_t t); // sides 0..s-1, s..s+t-1
Graph star_graph(std::size_t leaves);     // centre 0

Graph join(const Graph& g1, const Graph& g2);
Graph disjoint_union(const Graph& g1, const Graph& g2);

// H0(a,b): a pendant path of length a at u and one of length b at v. New
// vertices are appended, u's path first, nearest-to-u first.
Graph attach_paths(const Graph& h0, Vertex u, Vertex v, std::size_t a, std::size_t b);

// K_r^n: K_r on 0..r-1 with pendant paths of lengths floor((n-r)/2) at 0 and
// ceil((n-r)/2) at 1. The recorded spanning path runs from the end of the
// first pendant path through 0, 2, ..., r-1, 1 and out along the second.
PathLabeledGraph kr_pendant(std::size_t r, std::size_t n);

// K2 join P_{n-2}: dominating pair 0,1, path 2..n-1.
Graph k2_join_path(std::size_t n);
// K2 join (n-2)K1.
Graph complete_split(std::size_t n);
// K2 join C_{n-2}.
Graph k2_join_cycle(std::size_t n);

// K2 join H with H's spanning path lifted to a witness (dominating 0,1).
struct WitnessedGraph {
    Graph graph;
    SpanningPathWitness witness;
};
WitnessedGraph k2_join(const PathLabeledGraph& inner);

} // namespace surfex
