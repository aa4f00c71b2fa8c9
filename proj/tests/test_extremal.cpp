#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "surfex/canonical.hpp"
#include "surfex/error.hpp"
#include "surfex/extremal.hpp"
#include "surfex/families.hpp"
#include "surfex/walks.hpp"

using namespace surfex;

namespace {

Graph connected_random(std::size_t n, double p, std::mt19937_64& rng) {
    for (;;) {
        Graph g = oracle::random_graph(n, p, rng);
        if (g.is_connected()) return g;
    }
}

// G minus the dominating pair.
Graph inner_of(const Graph& g, const SpanningPathWitness& w) {
    std::vector<Vertex> id(g.order(), 0);
    Vertex next = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (v != w.dominating[0] && v != w.dominating[1]) id[v] = next++;
    }
    std::vector<Edge> e;
    for (const Edge& x : g.edges()) {
        const bool outer = x.u == w.dominating[0] || x.u == w.dominating[1] || x.v == w.dominating[0] ||
                           x.v == w.dominating[1];
        if (!outer) e.emplace_back(id[x.u], id[x.v]);
    }
    return Graph::from_edges(next, e);
}

} // namespace

TEST_CASE("minor test against exhaustive branch sets") {
    const std::vector<Graph> patterns{complete_graph(3), complete_graph(4), star_graph(3), star_graph(4),
                                      complete_bipartite(2, 3), cycle_graph(5)};
    std::mt19937_64 rng(101);
    MinorOptions plain;
    plain.shortcuts = false;
    for (int t = 0; t < 40; ++t) {
        Graph g = oracle::random_graph(4 + rng() % 4, 0.3 + 0.1 * (t % 4), rng);
        for (const Graph& h : patterns) {
            const bool ref = oracle::naive_minor(g, h);
            CHECK(has_minor(g, h) == ref);
            CHECK(has_minor(g, h, plain) == ref);
        }
    }
    CHECK(has_minor(complete_graph(5), complete_graph(5)));
    CHECK_FALSE(has_minor(complete_bipartite(3, 3), complete_graph(5)));
    CHECK(has_minor(cycle_graph(12), cycle_graph(4)));
}

TEST_CASE("K_{3,t} minors in the join family") {
    CHECK_FALSE(has_minor(k2_join(kr_pendant(4, 18)).graph, complete_bipartite(3, 5)));
    CHECK(has_minor(k2_join(kr_pendant(5, 18)).graph, complete_bipartite(3, 5)));
    CHECK_FALSE(has_minor(k2_join(kr_pendant(5, 28)).graph, complete_bipartite(3, 7)));
    // the star centre joins the dominating pair on the 3-side
    Graph sp = join(complete_graph(2), star_graph(5));
    CHECK(has_minor(sp, complete_bipartite(3, 5)));
    CHECK(has_minor(k2_join_path(20), complete_bipartite(3, 2)));
    CHECK_FALSE(has_minor(k2_join_path(20), complete_bipartite(3, 3)));

    CHECK_THROWS_AS(has_minor(path_graph(31), complete_graph(3)), ScaleRefusal);
    CHECK_THROWS_AS(has_minor(path_graph(20), complete_graph(11)), ScaleRefusal);
}

TEST_CASE("connected boundary") {
    CHECK(max_connected_boundary(star_graph(5)) == 5);
    CHECK(max_connected_boundary(path_graph(10)) == 2);
    CHECK(max_connected_boundary(complete_graph(6)) == 5);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(5 + rng() % 3, 0.4, rng);
        const std::size_t b = max_connected_boundary(g);
        CHECK(oracle::naive_minor(g, star_graph(b)));
        CHECK_FALSE(oracle::naive_minor(g, star_graph(b + 1)));
    }
}

TEST_CASE("planarity") {
    CHECK(is_planar(complete_graph(4)));
    CHECK_FALSE(is_planar(complete_graph(5)));
    CHECK_FALSE(is_planar(complete_bipartite(3, 3)));
    CHECK(is_planar(k2_join_path(200)));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        Graph g = oracle::random_graph(5 + rng() % 5, 0.45, rng);
        const bool p = is_planar(g);
        CHECK(p == is_planar_wagner(g));
        if (p && g.order() >= 3) CHECK(g.size() <= 3 * g.order() - 6);
    }
}

TEST_CASE("planar spectral extremal search") {
    auto r4 = spex_bruteforce(4);
    CHECK(r4.size() == 11);
    CHECK(r4.front().graph == complete_graph(4));
    CHECK(r4.front().rho == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(spex_bruteforce(5).size() == 33);
    CHECK(spex_bruteforce(6).size() == 142);
    auto r7 = spex_bruteforce(7);
    CHECK(r7.size() == 822);
    CHECK(r7.front().graph.size() == 15);
    CHECK(r7.front().rho >= oracle::dense_rho(k2_join_path(7)) - 1e-9);
    // at this order the argmax is K1 join (a triangle with three ears), not K2 join P5
    CHECK(r7.front().rho > oracle::dense_rho(k2_join_path(7)) + 1e-3);
    CHECK(oracle::degree_histogram(r7.front().graph) == std::map<std::size_t, std::size_t>{{3, 3}, {5, 3}, {6, 1}});
    CHECK(r7.front().rho == doctest::Approx(4.5114046642).epsilon(1e-9));
    for (std::size_t i = 0; i + 1 < r7.size(); ++i) CHECK(r7[i].rho >= r7[i + 1].rho - 1e-12);
    for (std::size_t i = 0; i < r7.size(); i += 37) {
        CHECK(std::abs(r7[i].rho - oracle::dense_rho(r7[i].graph)) <= 1e-8);
    }
    CHECK_THROWS_AS(spex_bruteforce(8), ScaleRefusal);
}

TEST_CASE("structure report") {
    std::vector<Vertex> p{0, 1, 2, 3, 4, 5, 6, 7};
    StructureReport a = structure_report(path_graph(8).plus_edges(std::vector<Edge>{{1, 5}, {2, 6}}), p);
    CHECK(a.endpoint_degrees == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(a.fork_count == 4);
    CHECK(a.contractible_2vertices == std::vector<Vertex>{3, 4});
    CHECK(a.separate_forks.empty());

    StructureReport b = structure_report(path_graph(8).plus_edges(std::vector<Edge>{{1, 6}}), p);
    CHECK(b.fork_count == 2);
    CHECK(b.contractible_2vertices == std::vector<Vertex>{2, 3, 4, 5});
    CHECK(b.separate_forks == std::vector<Vertex>{1, 6});

    // 2-vertex whose path neighbours are adjacent is not contractible
    StructureReport c = structure_report(path_graph(8).plus_edges(std::vector<Edge>{{1, 6}, {2, 4}}), p);
    CHECK(std::find(c.contractible_2vertices.begin(), c.contractible_2vertices.end(), 3) ==
          c.contractible_2vertices.end());

    std::vector<Vertex> bad{0, 2, 1, 3, 4, 5, 6, 7};
    CHECK_THROWS_AS(structure_report(path_graph(8), bad), PreconditionError);
}

TEST_CASE("contract switch") {
    std::mt19937_64 rng(55);
    int done = 0;
    for (int t = 0; done < 20 && t < 5000; ++t) {
        const std::size_t m = 10 + rng() % 6;
        // inner graph: path plus random chords
        std::vector<Edge> chords;
        Graph h = path_graph(m);
        for (int k = 0; k < 4; ++k) {
            Vertex u = static_cast<Vertex>(rng() % m), v = static_cast<Vertex>(rng() % m);
            if (u != v && !h.has_edge(u, v)) h = h.plus_edges(std::vector<Edge>{{u, v}});
        }
        std::vector<Vertex> order(m);
        std::iota(order.begin(), order.end(), 0);
        PathLabeledGraph inner{h, order};
        WitnessedGraph g = k2_join(inner);
        const std::size_t i = 1 + rng() % (m - 3);
        const std::size_t j = i + 2 + rng() % (m - i - 1);
        if (j > m - 1) continue;
        SwitchResult r;
        try {
            r = contract_switch(g.graph, g.witness, i, j);
        } catch (const PreconditionError&) {
            continue;
        }
        ++done;
        CHECK_NOTHROW(r.witness.validate(r.graph));
        CHECK(r.graph.size() == g.graph.size());
        Graph h2 = inner_of(r.graph, r.witness);
        Graph h1 = inner_of(g.graph, g.witness);
        CHECK(r.w2_delta == BigInt(oracle::brute_walks(h2, 2)) - BigInt(oracle::brute_walks(h1, 2)));
        CHECK(r.w3_delta == BigInt(oracle::brute_walks(h2, 3)) - BigInt(oracle::brute_walks(h1, 3)));
        CHECK(r.w2_delta == r.w2_predicted);
    }
    CHECK(done == 20);
}

TEST_CASE("rebalancing pendant paths") {
    RebalanceResult k4 = rebalance_check(complete_graph(4), 0, 1, 8, 4);
    CHECK(k4.increased);
    CHECK(k4.gap > 0);
    CHECK(k4.rho_ab == doctest::Approx(oracle::dense_rho(join(complete_graph(2), attach_paths(complete_graph(4), 0, 1, 8, 4)))));
    CHECK(k4.rho_shifted ==
          doctest::Approx(oracle::dense_rho(join(complete_graph(2), attach_paths(complete_graph(4), 0, 1, 7, 5)))));
    RebalanceResult k5 = rebalance_check(complete_graph(5), 0, 1, 10, 2);
    CHECK(k5.increased);
    CHECK_THROWS_AS(rebalance_check(complete_graph(4), 0, 1, 5, 4), PreconditionError);
    CHECK_THROWS_AS(rebalance_check(path_graph(4), 0, 3, 5, 1), PreconditionError);
}

TEST_CASE("candidate sweep at small orders") {
    for (std::size_t n : {10u, 12u, 14u}) {
        SweepResult s = candidate_sweep(n, 1);
        REQUIRE(s.best.has_value());
        CHECK(s.best_is_pendant_clique);
        CHECK(isomorphic(s.best->inner, kr_pendant(4, n - 2).graph));
        CHECK(s.best->minor_free);
        REQUIRE(s.embedded.has_value());
        CHECK(s.embedded_is_pendant_clique);
        CHECK(s.embedded->embeddable);
        for (const auto& r : s.rejected) {
            CHECK_FALSE(r.minor_free);
            CHECK(r.rho >= s.best->rho);
        }
        CHECK(s.best->rho == doctest::Approx(oracle::dense_rho(join(complete_graph(2), s.best->inner))));
    }
}
