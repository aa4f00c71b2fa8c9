#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surfex/error.hpp"
#include "surfex/graph.hpp"

namespace surfex {

// Rotation system plus edge signature on a simple graph. rotation(v) lists
// the neighbours of v in cyclic order; sign(u, v) is +1 or -1.
class EmbeddingScheme {
public:
    EmbeddingScheme() = default;
    // `signature` is aligned with graph.edges(). Throws PreconditionError
    // naming the first vertex whose rotation is not a permutation of its
    // neighbourhood.
    EmbeddingScheme(Graph graph, std::vector<std::vector<Vertex>> rotation, std::vector<int> signature);

    // All signs +1.
    static EmbeddingScheme orientable(Graph graph, std::vector<std::vector<Vertex>> rotation);
    // Counter-clockwise rotation from straight-line planar coordinates.
    static EmbeddingScheme from_coordinates(const Graph& graph, std::span<const std::pair<double, double>> xy);
    // Scheme whose faces are exactly `faces` (each a cyclic vertex sequence,
    // every edge on two face sides, the faces around each vertex forming one
    // disc). Throws PreconditionError when the faces do not close up into a
    // surface.
    static EmbeddingScheme from_faces(std::size_t n, const std::vector<std::vector<Vertex>>& faces);

    const Graph& graph() const noexcept { return graph_; }
    std::size_t order() const noexcept { return graph_.order(); }
    const std::vector<Vertex>& rotation(Vertex v) const { return rotation_[v]; }
    const std::vector<std::vector<Vertex>>& rotations() const noexcept { return rotation_; }
    const std::vector<int>& signature() const noexcept { return signature_; }
    const std::vector<Edge>& edge_list() const noexcept { return edges_; }
    std::size_t edge_id(Vertex u, Vertex v) const;
    int sign(Vertex u, Vertex v) const { return signature_[edge_id(u, v)]; }
    // Neighbour following / preceding w in the rotation at v.
    Vertex succ(Vertex v, Vertex w) const;
    Vertex pred(Vertex v, Vertex w) const;

    // Local switch at v: reverse its rotation and flip the signs at v.
    EmbeddingScheme switched(Vertex v) const;
    // Every rotation reversed.
    EmbeddingScheme mirrored() const;
    // Switches along a spanning forest so that forest edges carry +1. An
    // orientable scheme comes out with every sign +1.
    EmbeddingScheme normalized() const;

    // {"schema_version":1,"n":..,"rotation":[[..],..],"signature":{"u-v":+-1,..}}
    // Rotation entries are neighbour ids; signature keys have u < v and
    // missing keys default to +1.
    std::string to_json() const;
    static EmbeddingScheme from_json(std::string_view text);

private:
    Graph graph_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> rotation_;
    std::vector<int> signature_;
};

struct FaceTrace {
    std::vector<std::vector<Vertex>> faces; // boundary walks as vertex sequences
    std::size_t f = 0;
    long genus = 0;                         // Euler genus 2 - n + e - f
    bool orientable = true;
};

// Throws PreconditionError on a disconnected graph (no cellular embedding).
FaceTrace trace_faces(const EmbeddingScheme& s);
bool is_orientable(const EmbeddingScheme& s);

// Thrown when a splice changes the Euler genus of the host.
class SpliceIntegrityError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

struct SplicedScheme {
    EmbeddingScheme scheme;
    std::vector<Vertex> inner_to_merged; // id of each inner vertex in the result
};

// Glues the planar scheme `inner` into the 3-face (x, y, z) of `host`,
// identifying x = outer[0], y = outer[1], z = outer[2]. Host vertices keep
// their ids; the remaining inner vertices follow in inner-id order.
SplicedScheme splice_into_face(const EmbeddingScheme& host, std::array<Vertex, 3> face,
                               const EmbeddingScheme& inner, std::array<Vertex, 3> outer);

struct GenusLimits {
    double max_schemes = 1e9;           // exhaustive below this count
    std::size_t anneal_restarts = 20;
    std::size_t anneal_steps = 20000;
    std::uint64_t seed = 1;
};

struct GenusResult {
    long genus = 0;
    bool orientable = true;      // certificate orientability
    bool exhaustive = true;      // false: heuristic, only an upper bound
    double schemes_examined = 0;
    EmbeddingScheme certificate;
};

// Minimum Euler genus over rotation systems (and, unless orientable_only,
// signatures fixed to +1 on a spanning tree). Orientable schemes are tried
// first; the search stops once the Euler-bound floor
// max(0, ceil((e - 3n + 6) / 3)) is reached. Above max_schemes, graphs whose
// edge count admits a triangulation are first tried with find_triangulation,
// which settles them exactly; otherwise annealing gives an upper bound.
GenusResult min_euler_genus(const Graph& g, bool orientable_only = false, const GenusLimits& limits = {});

long euler_genus_floor(const Graph& g);

// Exact search for a closed-surface triangulation of g: every vertex link
// must be a Hamiltonian cycle of G[N(v)] and the links must agree on every
// edge. A graph with e = 3(n - 2 + k) edges has Euler genus <= k iff such a
// triangulation exists. Returns the face scheme, or nullopt. Throws
// ScaleRefusal when the link cycles exceed `max_link_cycles` in total.
std::optional<EmbeddingScheme> find_triangulation(const Graph& g, std::size_t max_link_cycles = 2000000);

struct TriangulationReport {
    long genus = 0;
    std::size_t faces_avoiding = 0;  // faces meeting neither dominating vertex
    std::size_t expected_avoiding = 0;
    std::vector<Vertex> path;        // link of u* with u** removed
    struct PrivateFaces {
        Vertex v;
        std::size_t observed;
        std::size_t expected;        // d_H(v) - 2
    };
    std::vector<PrivateFaces> private_faces; // internal path vertices
    bool private_ok = true;
    std::vector<Vertex> non_wheel;   // vertices whose faces do not form a wheel
    bool wheels_ok = true;

    bool ok() const { return faces_avoiding == expected_avoiding && private_ok && wheels_ok; }
};

// Throws PreconditionError if some face is not a triangle or the pair is
// not dominating.
TriangulationReport verify_triangulation_facecounts(const EmbeddingScheme& s, Vertex u1, Vertex u2);

// Built-in certificates transcribed from the standard drawings: K6 on the
// projective plane (10 triangles) and K7 on the torus (14 triangles).
// Vertex v_i of the drawing has id i-1.
EmbeddingScheme k6_projective_scheme();
EmbeddingScheme k7_torus_scheme();
// K2 join P_m drawn in the plane with dominating 0, 1 and path 2..m+1; the
// outer face is (0, 1, m+1).
EmbeddingScheme k2_join_path_planar(std::size_t m);

} // namespace surfex
