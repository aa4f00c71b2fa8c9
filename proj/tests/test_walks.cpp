#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oracles.hpp"
#include "surfex/construction.hpp"
#include "surfex/degseq.hpp"
#include "surfex/error.hpp"
#include "surfex/families.hpp"
#include "surfex/io.hpp"
#include "surfex/spectral.hpp"
#include "surfex/walks.hpp"

using namespace surfex;

namespace {

// P_m plus k random chords keeping the max degree at most dmax.
Graph path_with_chords(std::size_t m, std::size_t k, std::size_t dmax, std::mt19937_64& rng) {
    for (;;) {
        std::vector<Edge> e;
        std::vector<std::size_t> deg(m, 0);
        for (Vertex i = 0; i + 1 < m; ++i) {
            e.emplace_back(i, i + 1);
            ++deg[i];
            ++deg[i + 1];
        }
        std::size_t added = 0;
        for (int tries = 0; added < k && tries < 1000; ++tries) {
            Vertex u = static_cast<Vertex>(rng() % m), v = static_cast<Vertex>(rng() % m);
            if (u == v || deg[u] >= dmax || deg[v] >= dmax) continue;
            Edge c(u, v);
            if (std::find(e.begin(), e.end(), c) != e.end()) continue;
            e.push_back(c);
            ++deg[u];
            ++deg[v];
            ++added;
        }
        if (added == k) return Graph::from_edges(m, e);
    }
}

// All labelled graphs on the sequence's length with exactly that sequence.
std::uint64_t brute_max_w3(const std::vector<std::size_t>& d) {
    const std::size_t n = d.size();
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    std::uint64_t best = 0;
    bool any = false;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
        std::vector<std::size_t> deg(n, 0);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (mask >> k & 1) {
                ++deg[pairs[k].u];
                ++deg[pairs[k].v];
            }
        }
        auto sorted = deg;
        std::sort(sorted.rbegin(), sorted.rend());
        if (sorted != d) continue;
        std::uint64_t w = 0;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (mask >> k & 1) w += 2 * deg[pairs[k].u] * deg[pairs[k].v];
        }
        best = std::max(best, w);
        any = true;
    }
    return any ? best : 0;
}

} // namespace

TEST_CASE("walk counts") {
    WalkProfile p = walk_counts(path_graph(4), 3);
    CHECK(p.exact == std::vector<BigInt>{6, 10, 16});
    for (std::size_t l = 1; l <= 3; ++l) CHECK(p.exact[l - 1] == oracle::brute_walks(path_graph(4), l));

    WalkProfile k3 = walk_counts(complete_graph(3), 30);
    for (std::size_t l = 1; l <= 30; ++l) CHECK(k3.exact[l - 1] == BigInt(3) * (BigInt(1) << l));

    WalkProfile z = walk_counts(empty_graph(5), 4);
    for (const auto& w : z.exact) CHECK(w == 0);
    CHECK_THROWS_AS(walk_counts(path_graph(3), 0), PreconditionError);

    // 64-bit overflow is not an issue
    WalkProfile long_path = walk_counts(path_graph(50), 90);
    CHECK(long_path.exact.back() > BigInt(std::numeric_limits<std::uint64_t>::max()));
    CHECK(walk_counts(path_graph(4), 3).to_json() == R"(["6","10","16"])");
}

TEST_CASE("closed forms for w2 and w3") {
    CHECK(w2_closed_form(path_graph(4)) == 10);
    CHECK(w3_closed_form(path_graph(4)) == 16);
    WalkProfile k4 = walk_counts(complete_graph(4), 3);
    CHECK(k4.exact[1] == 36);
    CHECK(k4.exact[2] == 108);

    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        Graph h = oracle::random_graph(1 + rng() % 12, 0.35, rng);
        CHECK(check_w2_w3(h));
        CHECK(w2_closed_form(h) == oracle::brute_walks(h, 2));
        CHECK(w3_closed_form(h) == oracle::brute_walks(h, 3));
        WalkProfile p = walk_counts(h, 8);
        CHECK(p.exact[0] == 2 * h.size());
        for (std::size_t l = 1; l < 8; ++l) CHECK(p.exact[l] <= BigInt(h.max_degree()) * p.exact[l - 1]);
    }
}

TEST_CASE("scaled mode tracks exact mode") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        Graph h = path_with_chords(30, 6, 8, rng);
        const double s = 5.0;
        WalkProfile e = walk_counts(h, 200);
        WalkProfile sc = walk_counts_scaled(h, 200, s);
        for (std::size_t l = 1; l <= 200; ++l) {
            // exact / s^l, evaluated in extended precision
            using F = boost::multiprecision::cpp_bin_float_50;
            F ref = F(e.exact[l - 1]) / boost::multiprecision::pow(F(s), static_cast<int>(l));
            const double r = ref.convert_to<double>();
            CHECK(std::abs(sc.scaled[l - 1] - r) <= 1e-9 * r);
        }
    }
}

TEST_CASE("added edges stay inside the walk envelope") {
    std::mt19937_64 rng(31);
    for (std::size_t gamma = 1; gamma <= 3; ++gamma) {
        for (std::size_t m : {12u, 25u, 38u}) {
            WalkProfile base = walk_counts(path_graph(m), 12);
            for (int t = 0; t < 5; ++t) {
                Graph h = path_with_chords(m, 3 * gamma, 2 * gamma + 2, rng);
                WalkProfile w = walk_counts(h, 12);
                BigInt cap = 6 * gamma;
                for (std::size_t l = 1; l <= 12; ++l) {
                    BigInt diff = w.exact[l - 1] - base.exact[l - 1];
                    CHECK(diff >= 0);
                    CHECK(diff <= cap);
                    cap *= 4 * gamma + 4;
                }
            }
        }
    }
}

TEST_CASE("walk comparison") {
    CHECK(walk_compare(path_graph(9), path_graph(9), 20).equal);
    CHECK(walk_compare(path_graph(9), path_graph(9), 20).inconclusive);

    Graph h1 = kr_pendant(4, 10).graph;
    Graph h2 = path_graph(10).plus_edges(std::vector<Edge>{{1, 3}, {1, 5}, {6, 8}});
    CHECK(h2.degree_sequence().values() == std::vector<std::size_t>{4, 3, 3, 3, 3, 2, 2, 2, 1, 1});
    CHECK(w2_closed_form(h1) == 68);
    CHECK(w2_closed_form(h2) == 66);
    WalkComparison c = walk_compare(h1, h2, 10);
    CHECK_FALSE(c.equal);
    CHECK(c.k == 2);
    CHECK(c.sign == 1);
    CHECK(walk_compare(h2, h1, 10).sign == -1);
    CHECK_THROWS_AS(walk_compare(path_graph(3), path_graph(4), 5), PreconditionError);
}

TEST_CASE("walk comparison against the eigensolver ordering") {
    std::mt19937_64 rng(1414);
    const Graph k2 = complete_graph(2);
    int decided = 0, agree = 0;
    for (int t = 0; t < 50; ++t) {
        Graph h1 = path_with_chords(12, 3, 4, rng);
        Graph h2 = path_with_chords(12, 3, 4, rng);
        WalkComparison c = walk_compare(h1, h2, 60);
        const double r1 = oracle::dense_rho(join(k2, h1)), r2 = oracle::dense_rho(join(k2, h2));
        if (c.equal) {
            CHECK(std::abs(r1 - r2) <= 1e-9);
            continue;
        }
        ++decided;
        agree += c.sign == (r1 > r2 ? 1 : -1);
    }
    CHECK(decided > 30);
    CHECK(agree >= decided - 3);

    // small-order counterexample: w4 favours the first graph, rho the second
    Graph a = from_graph6("KhCgGC@@G__@"), b = from_graph6("KhCGWC@_g?_@");
    WalkComparison c = walk_compare(a, b, 20);
    CHECK(c.k == 4);
    CHECK(c.sign == 1);
    CHECK(oracle::dense_rho(join(k2, a)) < oracle::dense_rho(join(k2, b)) - 1e-7);
}

TEST_CASE("zhang solver") {
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{3, 7}, {10, 10}, {1, 40}}) {
        std::vector<ZhangPart> parts{{a, empty_graph(a)}, {b, empty_graph(b)}};
        CHECK(std::abs(zhang_rho(parts) - std::sqrt(double(a * b))) <= 1e-10);
    }
    for (std::size_t n : {5u, 20u, 300u}) {
        std::vector<ZhangPart> parts{{1, empty_graph(1)}, {1, empty_graph(1)}, {n - 2, empty_graph(n - 2)}};
        CHECK(std::abs(zhang_rho(parts) - (1 + std::sqrt(8.0 * n - 15)) / 2) <= 1e-10);
    }
    // parts may carry fewer vertices than n_i; the rest are isolated
    std::vector<ZhangPart> k5{{1, Graph{}}, {1, Graph{}}, {48, kr_pendant(5, 48).graph}};
    k5[0].h = empty_graph(1);
    k5[1].h = empty_graph(1);
    CHECK(std::abs(zhang_rho(k5) - oracle::dense_rho(k2_join(kr_pendant(5, 48)).graph)) <= 1e-8);

    std::mt19937_64 rng(77);
    for (int t = 0; t < 15; ++t) {
        const std::size_t r = 2 + rng() % 3;
        std::vector<ZhangPart> parts;
        Graph g;
        std::size_t total = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const std::size_t ni = 1 + rng() % (60 / r);
            total += ni;
            parts.push_back({ni, empty_graph(ni)});
            g = i == 0 ? empty_graph(ni) : join(g, empty_graph(ni));
        }
        CHECK(std::abs(zhang_rho(parts) - oracle::dense_rho(g)) <= 1e-8);
        (void)total;
    }
    std::vector<ZhangPart> one{{3, empty_graph(3)}};
    CHECK_THROWS_AS(zhang_rho(one), PreconditionError);
}

TEST_CASE("degree sequences") {
    CHECK(is_graphical(DegreeSequence({3, 3, 3, 3})));
    CHECK_FALSE(is_graphical(DegreeSequence({3, 3, 1, 1})));
    CHECK(is_graphical(DegreeSequence({4, 1, 1, 1, 1, 0})));
    CHECK_FALSE(is_graphical(DegreeSequence({4, 4, 1, 1, 1, 1})));
    CHECK_THROWS_AS(havel_hakimi(DegreeSequence({3, 3, 1, 1})), PreconditionError);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        Graph g = oracle::random_graph(2 + rng() % 10, 0.4, rng);
        DegreeSequence pi = g.degree_sequence();
        CHECK(is_graphical(pi));
        CHECK(havel_hakimi(pi).degree_sequence() == pi);
    }
}

TEST_CASE("w3 maximum matches brute force on small sequences") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 25; ++t) {
        Graph g = oracle::random_graph(4 + rng() % 3, 0.5, rng);
        DegreeSequence pi = g.degree_sequence();
        W3SearchResult r = max_w3_degseq(pi);
        CHECK(r.exhaustive);
        CHECK(r.w3 == brute_max_w3(pi.values()));
        CHECK(r.witness.degree_sequence() == pi);
        CHECK(check_w2_w3(r.witness));
        CHECK(r.w3 == w3_of(r.witness));
    }
}

TEST_CASE("tabulated w3 cases") {
    const std::size_t n = 20;
    W3SearchOptions no_k2;
    no_k2.realizations = W3SearchOptions::Realizations::no_isolated_edge;
    W3SearchOptions connected;
    connected.realizations = W3SearchOptions::Realizations::connected;
    const std::uint64_t table[] = {8 * n + 106, 8 * n + 346, 8 * n + 340, 8 * n + 332};
    for (int which = 1; which <= 4; ++which) {
        W3Case c = w3_case(which, n);
        CHECK(c.pi.length() == n - 2);
        CHECK(c.tabulated == table[which - 1]);
        W3SearchResult r = max_w3_degseq(c.pi, no_k2);
        CHECK(r.exhaustive);
        CHECK(r.w3 == c.tabulated);
        // case 3 only reaches its value with K3 join 3K1 split off from the path
        W3SearchResult conn = max_w3_degseq(c.pi, connected);
        CHECK(conn.witness.is_connected());
        if (which == 3) {
            CHECK(conn.w3 < c.tabulated);
            CHECK_FALSE(r.witness.is_connected());
        } else {
            CHECK(conn.w3 == c.tabulated);
        }
        // an isolated K2 on the two 1-vertices adds exactly 2
        W3SearchResult all = max_w3_degseq(c.pi);
        CHECK(all.w3 == c.tabulated + 2);
        CHECK(all.witness.degree_sequence() == c.pi);
    }
    CHECK(w3_case(1, n).pi.values().front() == 4);
    CHECK_THROWS_AS(w3_case(5, n), PreconditionError);
}
