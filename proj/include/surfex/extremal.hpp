#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfex/graph.hpp"
#include "surfex/walks.hpp"

namespace surfex {

inline constexpr std::size_t minor_max_host = 30;
inline constexpr std::size_t minor_max_pattern = 10;

struct MinorOptions {
    // Universal-vertex reduction for K_{s,t} patterns and the connected-set
    // test for stars. Off: plain contraction search.
    bool shortcuts = true;
};

// Exact minor test: H is a minor of G iff some contraction of G contains H
// as a subgraph. Searched with reductions and memoisation on canonical forms.
// Throws ScaleRefusal when |G| > 30 or |H| > 10.
bool has_minor(const Graph& g, const Graph& h, const MinorOptions& opts = {});

// Largest |N(C)| over connected vertex sets C; G has a K_{1,k} minor iff
// this is at least k.
std::size_t max_connected_boundary(const Graph& g);

// Boyer-Myrvold via Boost.
bool is_planar(const Graph& g);
// No K5 and no K_{3,3} minor. Same size envelope as has_minor.
bool is_planar_wagner(const Graph& g);

struct RankedGraph {
    Graph graph; // canonical labelling
    double rho = 0.0;
};

// Every planar graph on n vertices up to isomorphism, by rho descending
// (ties broken by canonical form). Throws ScaleRefusal for n > 7.
std::vector<RankedGraph> spex_bruteforce(std::size_t n);

struct StructureReport {
    std::pair<std::size_t, std::size_t> endpoint_degrees{0, 0};
    std::vector<Vertex> contractible_2vertices;
    std::vector<Vertex> separate_forks;
    std::size_t fork_count = 0;
};

// Forks are vertices of degree >= 3 in h. A 2-vertex is contractible when it
// lies strictly between two forks on the path and its path neighbours are
// non-adjacent; a fork is separate when neither path neighbour is a fork.
// Throws PreconditionError unless `path` is a spanning path of h.
StructureReport structure_report(const Graph& h, const std::vector<Vertex>& path);

struct SwitchResult {
    Graph graph;
    SpanningPathWitness witness;
    BigInt w2_delta;             // exact, inner graph
    BigInt w3_delta;
    long long w2_predicted = 0;  // 2d(u_{n-2}) - 2d(u_{j-1}) + 2
    long long w3_predicted = 0;  // 2(d(u_i)-2)(d(u_j)-2) + 2(d(u_{n-3})-2)
};

// G - {u_i u_{i+1}, u_{j-1} u_j} + {u_i u_j, u_{i+1} u_{n-2}} on a graph
// K2 join H with witness path u_1..u_{n-2} (1-based indices i, j). The new
// path is u_1..u_i u_j..u_{n-2} u_{i+1}..u_{j-1}. Degrees in the predictions
// are taken in the inner graph before the switch.
SwitchResult contract_switch(const Graph& g, const SpanningPathWitness& witness, std::size_t i, std::size_t j);

struct RebalanceResult {
    double rho_ab = 0.0;       // K2 join H0(a, b)
    double rho_shifted = 0.0;  // K2 join H0(a-1, b+1)
    double gap = 0.0;          // rho_shifted - rho_ab
    bool increased = false;
};

// Throws PreconditionError unless a >= b + 2, min degree of h0 >= 2 and
// h0 has a Hamiltonian u-v path.
RebalanceResult rebalance_check(const Graph& h0, Vertex u, Vertex v, std::size_t a, std::size_t b);

struct SweepOptions {
    // 0: every chord set. w > 0: chord endpoints confined to w consecutive
    // path vertices.
    std::size_t window = 0;
    std::size_t keep = 2000;   // top candidates kept for the minor filter
};

struct SweepCandidate {
    Graph inner;               // P_{n-2} plus chords, path 0..n-3
    std::vector<Edge> chords;
    double rho = 0.0;
    bool minor_free = false;
    bool embeddable = false;   // K2 join H triangulates a surface of Euler genus gamma
};

struct SweepResult {
    std::size_t n = 0, gamma = 0;
    std::uint64_t chord_sets = 0;     // chord sets within the degree bound
    std::uint64_t ranked = 0;         // after dropping mirror images
    std::size_t minor_tests = 0;
    std::vector<SweepCandidate> rejected; // higher rho, minor present
    std::optional<SweepCandidate> best;   // rho-argmax among minor-free
    bool best_is_pendant_clique = false;  // inner ~ K_{gamma+3}^{n-2}
    std::size_t not_embeddable = 0;       // minor-free but no triangulation
    std::optional<SweepCandidate> embedded; // rho-argmax among embeddable
    bool embedded_is_pendant_clique = false;
};

// Ranks K2 join H over H = P_{n-2} + 3 gamma chords with max degree
// <= 2 gamma + 2 and returns the best candidate free of a K_{3,2gamma+3}
// minor, then keeps going down the ranking to the best candidate that
// actually embeds (every candidate has 3(n - 2 + gamma) edges, so that means
// a triangulation).
SweepResult candidate_sweep(std::size_t n, std::size_t gamma, const SweepOptions& opts = {});

} // namespace surfex
