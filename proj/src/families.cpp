#include "surfex/families.hpp"

#include "surfex/error.hpp"

namespace surfex {

Graph path_graph(std::size_t n) {
    if (n == 0) throw PreconditionError("path needs at least one vertex");
    GraphBuilder b(n);
    for (std::size_t i = 0; i + 1 < n; ++i) b.add_edge(Vertex(i), Vertex(i + 1));
    return std::move(b).build();
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw PreconditionError("cycle needs at least three vertices");
    GraphBuilder b(n);
    for (std::size_t i = 0; i < n; ++i) b.add_edge(Vertex(i), Vertex((i + 1) % n));
    return std::move(b).build();
}

Graph complete_graph(std::size_t n) {
    GraphBuilder b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) b.add_edge(Vertex(i), Vertex(j));
    return std::move(b).build();
}

Graph empty_graph(std::size_t n) { return Graph::from_edges(n, {}); }

Graph complete_bipartite(std::size_t s, std::size_t t) {
    GraphBuilder b(s + t);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < t; ++j) b.add_edge(Vertex(i), Vertex(s + j));
    return std::move(b).build();
}

Graph star_graph(std::size_t leaves) { return complete_bipartite(1, leaves); }

Graph disjoint_union(const Graph& g1, const Graph& g2) {
    const auto n1 = static_cast<Vertex>(g1.order());
    auto e = g1.edges();
    for (const Edge& x : g2.edges()) e.emplace_back(x.u + n1, x.v + n1);
    return Graph::from_edges(g1.order() + g2.order(), std::move(e));
}

Graph join(const Graph& g1, const Graph& g2) {
    const auto n1 = static_cast<Vertex>(g1.order());
    auto e = g1.edges();
    e.reserve(g1.size() + g2.size() + g1.order() * g2.order());
    for (const Edge& x : g2.edges()) e.emplace_back(x.u + n1, x.v + n1);
    for (Vertex u = 0; u < n1; ++u)
        for (std::size_t w = 0; w < g2.order(); ++w) e.emplace_back(u, Vertex(n1 + w));
    return Graph::from_edges(g1.order() + g2.order(), std::move(e));
}

Graph attach_paths(const Graph& h0, Vertex u, Vertex v, std::size_t a, std::size_t b) {
    if (u == v) throw PreconditionError("pendant paths need two distinct vertices");
    if (u >= h0.order() || v >= h0.order()) throw PreconditionError("attachment vertex out of range");
    auto e = h0.edges();
    auto next = static_cast<Vertex>(h0.order());
    auto grow = [&](Vertex from, std::size_t len) {
        Vertex prev = from;
        for (std::size_t i = 0; i < len; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
    };
    grow(u, a);
    grow(v, b);
    return Graph::from_edges(next, std::move(e));
}

PathLabeledGraph kr_pendant(std::size_t r, std::size_t n) {
    if (r < 3) throw PreconditionError("kr_pendant needs r >= 3");
    if (n < r) throw PreconditionError("kr_pendant needs n >= r");
    const std::size_t a = (n - r) / 2;
    const std::size_t b = n - r - a;
    PathLabeledGraph out{attach_paths(complete_graph(r), 0, 1, a, b), {}};
    auto& p = out.path_order;
    p.reserve(n);
    for (std::size_t i = a; i > 0; --i) p.push_back(Vertex(r + i - 1));
    p.push_back(0);
    for (std::size_t i = 2; i < r; ++i) p.push_back(Vertex(i));
    p.push_back(1);
    for (std::size_t i = 0; i < b; ++i) p.push_back(Vertex(r + a + i));
    return out;
}

Graph k2_join_path(std::size_t n) {
    if (n < 3) throw PreconditionError("K2 join P_{n-2} needs n >= 3");
    return join(complete_graph(2), path_graph(n - 2));
}

Graph complete_split(std::size_t n) {
    if (n < 2) throw PreconditionError("K2 join (n-2)K1 needs n >= 2");
    return join(complete_graph(2), empty_graph(n - 2));
}

Graph k2_join_cycle(std::size_t n) {
    if (n < 5) throw PreconditionError("K2 join C_{n-2} needs n >= 5");
    return join(complete_graph(2), cycle_graph(n - 2));
}

WitnessedGraph k2_join(const PathLabeledGraph& inner) {
    WitnessedGraph out{join(complete_graph(2), inner.graph), {}};
    out.witness.dominating = {0, 1};
    out.witness.path_order.reserve(inner.path_order.size());
    for (Vertex v : inner.path_order) out.witness.path_order.push_back(v + 2);
    return out;
}

} // namespace surfex
