#include "surfex/graph.hpp"

#include <numeric>
#include <sstream>

#include "surfex/error.hpp"

namespace surfex {

DegreeSequence::DegreeSequence(std::vector<std::size_t> degrees)
    : degrees_(std::move(degrees)) {
    std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
    if (sum() % 2 != 0) {
        throw PreconditionError("degree sequence " + to_string() + " has odd sum");
    }
}

std::size_t DegreeSequence::sum() const noexcept {
    return std::accumulate(degrees_.begin(), degrees_.end(), std::size_t{0});
}

std::string DegreeSequence::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        if (i) out << ',';
        out << degrees_[i];
    }
    out << ')';
    return out.str();
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, Backend backend) {
    for (const Edge& e : edges) {
        if (e.v >= n) {
            throw PreconditionError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    "} out of range for order " + std::to_string(n));
        }
        if (e.u == e.v) {
            throw PreconditionError("loop at vertex " + std::to_string(e.u));
        }
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw PreconditionError("repeated edge {" + std::to_string(dup->u) + "," +
                                std::to_string(dup->v) + "}");
    }

    Graph g;
    g.n_ = n;
    if (backend == Backend::automatic) {
        backend = n <= dense_limit ? Backend::dense : Backend::sparse;
    }
    if (backend == Backend::dense && n > dense_limit) {
        throw PreconditionError("dense backend supports at most " + std::to_string(dense_limit) +
                                " vertices");
    }
    g.backend_ = backend;

    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : edges) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adj_.resize(2 * edges.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Lexicographic edge order keeps every adjacency array sorted.
    for (const Edge& e : edges) {
        g.adj_[fill[e.u]++] = e.v;
        g.adj_[fill[e.v]++] = e.u;
    }
    if (backend == Backend::dense) {
        g.rows_.assign(n, 0);
        for (const Edge& e : edges) {
            g.rows_[e.u] |= std::uint64_t{1} << e.v;
            g.rows_[e.v] |= std::uint64_t{1} << e.u;
        }
    }
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_ || u == v) return false;
    if (backend_ == Backend::dense) return (rows_[u] >> v) & 1U;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint64_t Graph::row(Vertex v) const {
    if (backend_ != Backend::dense) {
        throw PreconditionError("bit rows are only available on the dense backend");
    }
    return rows_[v];
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(size());
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

std::size_t Graph::min_degree() const {
    if (n_ == 0) return 0;
    std::size_t best = degree(0);
    for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
    return best;
}

DegreeSequence Graph::degree_sequence() const {
    std::vector<std::size_t> d(n_);
    for (Vertex v = 0; v < n_; ++v) d[v] = degree(v);
    return DegreeSequence(std::move(d));
}

std::vector<std::size_t> Graph::components() const {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(n_, unset);
    std::vector<Vertex> stack;
    std::size_t next = 0;
    for (Vertex s = 0; s < n_; ++s) {
        if (comp[s] != unset) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : neighbors(u)) {
                if (comp[w] == unset) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    auto comp = components();
    return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

Graph Graph::with_backend(Backend backend) const {
    return from_edges(n_, edges(), backend);
}

Graph Graph::plus_edges(std::span<const Edge> extra) const {
    auto e = edges();
    e.insert(e.end(), extra.begin(), extra.end());
    return from_edges(n_, std::move(e), backend_);
}

Graph Graph::minus_edges(std::span<const Edge> removed) const {
    std::vector<Edge> drop(removed.begin(), removed.end());
    std::sort(drop.begin(), drop.end());
    std::vector<Edge> keep;
    for (const Edge& e : edges()) {
        if (!std::binary_search(drop.begin(), drop.end(), e)) keep.push_back(e);
    }
    if (keep.size() + drop.size() != size()) {
        throw PreconditionError("cannot remove an edge that is not present");
    }
    return from_edges(n_, std::move(keep), backend_);
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
    std::vector<Vertex> index(n_, static_cast<Vertex>(-1));
    for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<Vertex>(i);
    std::vector<Edge> e;
    for (Vertex u : vertices) {
        for (Vertex w : neighbors(u)) {
            if (index[w] != static_cast<Vertex>(-1) && index[u] < index[w]) {
                e.emplace_back(index[u], index[w]);
            }
        }
    }
    return from_edges(vertices.size(), std::move(e));
}

Graph Graph::relabeled(std::span<const Vertex> perm) const {
    if (perm.size() != n_) throw PreconditionError("permutation length differs from order");
    std::vector<Edge> e;
    e.reserve(size());
    for (const Edge& x : edges()) e.emplace_back(perm[x.u], perm[x.v]);
    return from_edges(n_, std::move(e), backend_);
}

Graph GraphBuilder::build(Backend backend) && {
    return Graph::from_edges(n_, std::move(edges_), backend);
}

Graph GraphBuilder::build(Backend backend) const& {
    return Graph::from_edges(n_, edges_, backend);
}

void SpanningPathWitness::validate(const Graph& g) const {
    const std::size_t n = g.order();
    auto [a, b] = dominating;
    if (a >= n || b >= n || a == b) throw PreconditionError("witness: invalid dominating pair");
    if (path_order.size() + 2 != n) {
        throw PreconditionError("witness: path covers " + std::to_string(path_order.size()) +
                                " of " + std::to_string(n - 2) + " vertices");
    }
    std::vector<char> seen(n, 0);
    seen[a] = seen[b] = 1;
    for (Vertex v : path_order) {
        if (v >= n || seen[v]) throw PreconditionError("witness: path is not a permutation");
        seen[v] = 1;
    }
    if (!g.has_edge(a, b)) throw PreconditionError("witness: dominating vertices not adjacent");
    for (std::size_t i = 0; i < path_order.size(); ++i) {
        Vertex v = path_order[i];
        if (!g.has_edge(a, v) || !g.has_edge(b, v)) {
            throw PreconditionError("witness: vertex " + std::to_string(v) + " not dominated");
        }
        if (i + 1 < path_order.size() && !g.has_edge(v, path_order[i + 1])) {
            throw PreconditionError("witness: missing path edge {" + std::to_string(v) + "," +
                                    std::to_string(path_order[i + 1]) + "}");
        }
    }
}

bool SpanningPathWitness::holds_in(const Graph& g) const {
    try {
        validate(g);
        return true;
    } catch (const PreconditionError&) {
        return false;
    }
}

} // namespace surfex
