#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace surfex {

using Vertex = std::uint32_t;

// Unordered vertex pair, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    auto operator<=>(const Edge&) const = default;
};

enum class Backend {
    automatic, // dense for n <= dense_limit, sparse otherwise
    dense,     // one 64-bit adjacency row per vertex
    sparse,    // compressed adjacency lists only
};

inline constexpr std::size_t dense_limit = 64;

// Degrees in non-increasing order. Construction rejects odd sums.
class DegreeSequence {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<std::size_t> degrees);

    const std::vector<std::size_t>& values() const noexcept { return degrees_; }
    std::size_t length() const noexcept { return degrees_.size(); }
    std::size_t sum() const noexcept;
    std::size_t operator[](std::size_t i) const { return degrees_[i]; }

    // "(4,4,3,3,2,2,1,1)"
    std::string to_string() const;

    bool operator==(const DegreeSequence&) const = default;

private:
    std::vector<std::size_t> degrees_;
};

// Immutable simple undirected graph on vertices 0..n-1.
//
// Both backends keep sorted adjacency arrays; the dense backend additionally
// keeps bit rows so adjacency queries are a single mask test.
class Graph {
public:
    Graph() = default;

    // Throws PreconditionError on loops, repeated edges or out-of-range ids.
    static Graph from_edges(std::size_t n, std::vector<Edge> edges,
                            Backend backend = Backend::automatic);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return adj_.size() / 2; }
    Backend backend() const noexcept { return backend_; }

    bool has_edge(Vertex u, Vertex v) const;
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    // Dense backend only.
    std::uint64_t row(Vertex v) const;

    // Lexicographically sorted.
    std::vector<Edge> edges() const;

    std::size_t max_degree() const;
    std::size_t min_degree() const;
    DegreeSequence degree_sequence() const;
    bool is_connected() const;
    // Component id per vertex, ids assigned in order of smallest member.
    std::vector<std::size_t> components() const;

    Graph with_backend(Backend backend) const;
    Graph plus_edges(std::span<const Edge> extra) const;
    Graph minus_edges(std::span<const Edge> removed) const;
    // Subgraph induced by `vertices`, relabelled 0..k-1 in the given order.
    Graph induced(std::span<const Vertex> vertices) const;
    // Vertex v becomes perm[v].
    Graph relabeled(std::span<const Vertex> perm) const;

    // Labelled equality: same order and same edge set (backend ignored).
    bool operator==(const Graph& other) const {
        return n_ == other.n_ && offsets_ == other.offsets_ && adj_ == other.adj_;
    }

private:
    std::size_t n_ = 0;
    Backend backend_ = Backend::dense;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
    std::vector<std::uint64_t> rows_;
};

class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n = 0) : n_(n) {}

    Vertex add_vertex() { return static_cast<Vertex>(n_++); }
    void add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }
    std::size_t order() const noexcept { return n_; }
    void reserve_edges(std::size_t m) { edges_.reserve(m); }

    Graph build(Backend backend = Backend::automatic) &&;
    Graph build(Backend backend = Backend::automatic) const&;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
};

// Two mutually adjacent dominating vertices plus a Hamiltonian path through
// the remaining vertices, i.e. a spanning copy of K2 join P_{n-2}.
struct SpanningPathWitness {
    std::array<Vertex, 2> dominating{0, 1};
    std::vector<Vertex> path_order;

    // Throws PreconditionError naming the first failed condition.
    void validate(const Graph& g) const;
    bool holds_in(const Graph& g) const;
};

// A graph with a recorded spanning path (no dominating pair), used by the
// pendant-clique family.
struct PathLabeledGraph {
    Graph graph;
    std::vector<Vertex> path_order;
};

} // namespace surfex
