#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "surfex/graph.hpp"

namespace surfex {

// Largest order accepted by the graph6 encoder; beyond it the text would
// not fit comfortably in memory.
inline constexpr std::size_t graph6_max_order = 65536;

std::string to_graph6(const Graph& g);
// Accepts an optional ">>graph6<<" header and a trailing newline.
// Throws ParseError carrying the offending byte offset.
Graph from_graph6(std::string_view text);

// {"n":..,"edges":[[u,v],..]} with edges sorted lexicographically.
std::string to_json(const Graph& g);
Graph graph_from_json(std::string_view text);

} // namespace surfex
