#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "surfex/embedding.hpp"
#include "surfex/graph.hpp"

namespace surfex {

enum class GadgetKind { H, Hprime };

// H: v1..v7 as ids 0..6, hub v7 adjacent to v1..v6, 15 edges.
// H': v1..v6 as ids 0..5, 12 edges.
Graph gadget(GadgetKind kind);

struct SurgeryStep {
    Vertex x = 0, y = 0, z = 0;
    std::size_t label = 0;
    Vertex v3 = 0, v4 = 0, v6 = 0, v7 = 0; // vertices added by this step
    // z v4 v7 v3 v6
    std::vector<Vertex> path() const { return {z, v4, v7, v3, v6}; }
};

struct SurgeryResult {
    Graph graph;
    SurgeryStep step;
};

// Overlays H (x = v1, y = v2, z = v5) and H' on the triangle xyz. Adds the
// vertices v3, v4, v6, v7 (in that order, after the existing ones) and 18
// edges. Throws PreconditionError unless xyz is a triangle.
SurgeryResult surgery(const Graph& g, Vertex x, Vertex y, Vertex z, std::size_t label);

struct ConstructionTrace {
    Graph graph;
    std::size_t gamma = 0;
    SpanningPathWitness witness;
    std::vector<Edge> added_edges; // edges outside the spanning K2 join P_{n-2}
    std::vector<SurgeryStep> surgery_log;

    // graph6 payload, witness and log.
    std::string to_json() const;
};

// Member of EX(n, gamma) containing K2 join P_{n-2} on the dominating pair
// 0, 1. Even gamma starts from K2 join P_{n-2gamma}, odd gamma from K6 with
// K2 join P_{n-2gamma-3} in the face v1v2v3; then floor(gamma/2) chained
// surgeries. Throws PreconditionError for n < 2gamma + 4.
ConstructionTrace construct_ex(std::size_t n, std::size_t gamma);

struct ExtremalCandidate {
    Graph graph;
    EmbeddingScheme scheme;
    Vertex u1 = 0, u2 = 0; // dominating pair
};

// K2 join K_{gamma+3}^{n-2} with a genus-gamma triangulation obtained by
// splicing two K2 join P gadgets into the K6 (gamma = 1) or K7 (gamma = 2)
// certificate. Throws ScaleRefusal above max_order.
ExtremalCandidate build_extremal_candidates(std::size_t n, std::size_t gamma, std::size_t max_order = 200);

} // namespace surfex
