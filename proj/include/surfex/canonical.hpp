#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "surfex/graph.hpp"

namespace surfex {

inline constexpr std::size_t canonical_max_order = 256;

// Upper-triangle adjacency bits of the canonically relabelled graph, in
// graph6 column order. Two graphs are isomorphic iff their forms are equal.
struct CanonicalForm {
    std::size_t n = 0;
    std::vector<std::uint64_t> bits;

    auto operator<=>(const CanonicalForm&) const = default;
};

struct CanonicalLabeling {
    CanonicalForm form;
    std::vector<Vertex> position; // vertex v sits at canonical index position[v]
};

// Colour refinement plus individualisation, keeping the smallest leaf.
// Throws ScaleRefusal above canonical_max_order.
CanonicalLabeling canonical_labeling(const Graph& g);
CanonicalForm canonical_form(const Graph& g);
Graph canonical_graph(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

} // namespace surfex
