#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "surfex/canonical.hpp"
#include "surfex/error.hpp"
#include "surfex/families.hpp"
#include "surfex/io.hpp"

using namespace surfex;

namespace {

std::vector<std::size_t> degrees(std::initializer_list<std::pair<std::size_t, std::size_t>> runs) {
    std::vector<std::size_t> d;
    for (auto [v, k] : runs) d.insert(d.end(), k, v);
    return d;
}

} // namespace

TEST_CASE("path graph") {
    CHECK(path_graph(1).order() == 1);
    CHECK(path_graph(1).size() == 0);
    Graph p4 = path_graph(4);
    CHECK(p4.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(path_graph(5).degree_sequence().values() == std::vector<std::size_t>{2, 2, 2, 1, 1});
    CHECK_THROWS_AS(path_graph(0), PreconditionError);
}

TEST_CASE("graph rejects loops and repeated edges") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), PreconditionError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), PreconditionError);
    CHECK_THROWS_AS(DegreeSequence({3, 2, 2}), PreconditionError);
}

TEST_CASE("join") {
    CHECK(join(complete_graph(1), complete_graph(1)) == complete_graph(2));
    CHECK(join(complete_graph(2), path_graph(8)).size() == 24);
    CHECK(oracle::brute_isomorphic(join(empty_graph(2), empty_graph(3)), complete_bipartite(2, 3)));

    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        Graph a = oracle::random_graph(1 + rng() % 9, 0.4, rng);
        Graph b = oracle::random_graph(1 + rng() % 9, 0.4, rng);
        Graph j = join(a, b);
        CHECK(j.size() == a.size() + b.size() + a.order() * b.order());
        for (Vertex u = 0; u < a.order(); ++u) {
            for (Vertex v = 0; v < b.order(); ++v) CHECK(j.has_edge(u, static_cast<Vertex>(a.order() + v)));
        }
    }
}

TEST_CASE("pendant clique family") {
    const std::size_t n = 20;
    CHECK(kr_pendant(4, n - 2).graph.degree_sequence().values() == degrees({{4, 2}, {3, 2}, {2, n - 8}, {1, 2}}));
    CHECK(kr_pendant(5, n - 2).graph.degree_sequence().values() == degrees({{5, 2}, {4, 3}, {2, n - 9}, {1, 2}}));

    PathLabeledGraph k46 = kr_pendant(4, 6);
    CHECK(k46.graph.degree_sequence().values() == std::vector<std::size_t>{4, 4, 3, 3, 1, 1});
    CHECK(k46.path_order.size() == 6);

    for (std::size_t r = 3; r <= 6; ++r) {
        for (std::size_t m = r; m <= r + 9; ++m) {
            PathLabeledGraph k = kr_pendant(r, m);
            CHECK(k.graph.size() == r * (r - 1) / 2 + m - r);
            for (std::size_t i = 0; i + 1 < k.path_order.size(); ++i)
                CHECK(k.graph.has_edge(k.path_order[i], k.path_order[i + 1]));
        }
    }
    CHECK_THROWS_AS(kr_pendant(5, 4), PreconditionError);
}

TEST_CASE("attach paths") {
    CHECK(attach_paths(complete_graph(3), 0, 1, 0, 0) == complete_graph(3));
    for (std::size_t k = 0; k <= 7; ++k) {
        Graph a = attach_paths(complete_graph(4), 0, 1, k / 2, k - k / 2);
        CHECK(a.size() == 6 + k);
        CHECK(oracle::brute_isomorphic(a, kr_pendant(4, 4 + k).graph) == true);
    }
    CHECK_THROWS_AS(attach_paths(complete_graph(3), 1, 1, 2, 2), PreconditionError);
}

TEST_CASE("spanning path witness") {
    WitnessedGraph w = k2_join(kr_pendant(5, 18));
    CHECK_NOTHROW(w.witness.validate(w.graph));
    SpanningPathWitness bad = w.witness;
    std::swap(bad.path_order[0], bad.path_order[5]);
    CHECK_FALSE(bad.holds_in(w.graph));
    CHECK_THROWS_AS(bad.validate(w.graph), PreconditionError);
}

TEST_CASE("backends agree") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 64, 0.2, rng);
        Graph d = g.with_backend(Backend::dense);
        Graph s = g.with_backend(Backend::sparse);
        CHECK(d.size() == s.size());
        for (Vertex u = 0; u < g.order(); ++u) {
            CHECK(d.degree(u) == s.degree(u));
            for (Vertex v = 0; v < g.order(); ++v) CHECK(d.has_edge(u, v) == s.has_edge(u, v));
        }
    }
}

TEST_CASE("graph6 encoding") {
    CHECK(to_graph6(complete_graph(2)) == "A_");
    CHECK(to_graph6(complete_graph(1)) == "@");
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 32, 0.3, rng);
        CHECK(to_graph6(g) == oracle::graph6(g));
        CHECK(from_graph6(to_graph6(g)) == g);
    }
    // order >= 63 uses the four-byte size header
    Graph big = path_graph(100);
    CHECK(to_graph6(big).substr(0, 4) == std::string("~?@c"));
    CHECK(from_graph6(to_graph6(big)) == big);
    CHECK(from_graph6(">>graph6<<A_\n") == complete_graph(2));
}

TEST_CASE("graph6 errors carry a byte offset") {
    try {
        from_graph6("D~"); // five vertices need two data bytes
        FAIL("truncated input accepted");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    try {
        from_graph6("A`"); // K2 with a padding bit set
        FAIL("bad padding accepted");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 1);
    }
    CHECK_THROWS_AS(from_graph6("A "), ParseError);
}

TEST_CASE("json export") {
    Graph g = Graph::from_edges(4, {{2, 3}, {0, 1}, {1, 3}});
    CHECK(to_json(g) == R"({"n":4,"edges":[[0,1],[1,3],[2,3]]})");
    CHECK(graph_from_json(to_json(g)) == g);
}

TEST_CASE("canonical form agrees with brute-force isomorphism") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 2 + rng() % 6;
        Graph a = oracle::random_graph(n, 0.5, rng);
        Graph b = oracle::random_graph(n, 0.5, rng);
        CHECK(isomorphic(a, b) == oracle::brute_isomorphic(a, b));
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_form(a) == canonical_form(a.relabeled(perm)));
    }
}
