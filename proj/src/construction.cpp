#include "surfex/construction.hpp"

#include <json.hpp>

#include "surfex/error.hpp"
#include "surfex/families.hpp"
#include "surfex/io.hpp"

namespace surfex {

namespace {

constexpr int h_edges[15][2] = {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {4, 6}, {5, 6}, {1, 4}, {2, 5},
                                {1, 5}, {1, 7}, {2, 7}, {3, 7}, {4, 7}, {5, 7}, {6, 7}};
constexpr int hp_edges[12][2] = {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {4, 6}, {5, 6},
                                 {3, 5}, {3, 6}, {1, 6}, {3, 4}, {2, 6}, {2, 4}};

} // namespace

Graph gadget(GadgetKind kind) {
    GraphBuilder b(kind == GadgetKind::H ? 7 : 6);
    if (kind == GadgetKind::H) {
        for (auto [u, v] : h_edges) b.add_edge(Vertex(u - 1), Vertex(v - 1));
    } else {
        for (auto [u, v] : hp_edges) b.add_edge(Vertex(u - 1), Vertex(v - 1));
    }
    return std::move(b).build();
}

SurgeryResult surgery(const Graph& g, Vertex x, Vertex y, Vertex z, std::size_t label) {
    if (!g.has_edge(x, y) || !g.has_edge(y, z) || !g.has_edge(x, z)) {
        throw PreconditionError("{" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) +
                                "} is not a triangle");
    }
    const auto n = static_cast<Vertex>(g.order());
    SurgeryResult out;
    out.step = {x, y, z, label, n, n + 1, n + 2, n + 3};
    // v1..v7 in gadget numbering
    const Vertex id[8] = {0, x, y, n, n + 1, z, n + 2, n + 3};

    std::vector<Edge> edges = g.edges();
    auto add = [&](int a, int b) {
        if (!g.has_edge(id[a], id[b]) || id[a] >= n || id[b] >= n) edges.emplace_back(id[a], id[b]);
    };
    for (auto [a, b] : h_edges) {
        const bool on_face = (a == 1 || a == 2 || a == 5) && (b == 1 || b == 2 || b == 5);
        if (!on_face) add(a, b);
    }
    for (std::size_t k = 6; k < 12; ++k) add(hp_edges[k][0], hp_edges[k][1]);
    out.graph = Graph::from_edges(n + 4, std::move(edges));
    return out;
}

std::string ConstructionTrace::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["n"] = graph.order();
    j["gamma"] = gamma;
    j["edges"] = graph.size();
    j["graph6"] = to_graph6(graph);
    j["dominating"] = {witness.dominating[0], witness.dominating[1]};
    j["path"] = witness.path_order;
    auto& added = j["added_edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : added_edges) added.push_back({e.u, e.v});
    auto& log = j["surgery_log"] = nlohmann::ordered_json::array();
    for (const SurgeryStep& s : surgery_log) {
        log.push_back({{"x", s.x}, {"y", s.y}, {"z", s.z}, {"i", s.label},
                       {"new", {s.v3, s.v4, s.v6, s.v7}}});
    }
    return j.dump(2);
}

ConstructionTrace construct_ex(std::size_t n, std::size_t gamma) {
    if (n < 2 * gamma + 4) {
        throw PreconditionError("construct_ex needs n >= 2*gamma + 4 (n = " + std::to_string(n) +
                                ", gamma = " + std::to_string(gamma) + ")");
    }
    ConstructionTrace tr;
    tr.gamma = gamma;
    auto& path = tr.witness.path_order;
    Graph g;
    Vertex w3 = 0;
    if (gamma % 2 == 0) {
        // w1 = 0, w2 = 1, w_k = k - 1
        const std::size_t t = n - 2 * gamma - 2;
        g = k2_join_path(t + 2);
        for (std::size_t k = t + 2; k >= 3; --k) path.push_back(Vertex(k - 1));
        w3 = 2;
    } else {
        // K6 on 0..5; w1 = v1, w2 = v2, w_{t+2} = v3, w_3..w_{t+1} appended.
        const std::size_t t = n - 2 * gamma - 3;
        std::vector<Edge> edges = complete_graph(6).edges();
        std::vector<Vertex> w(t + 3);
        w[1] = 0;
        w[2] = 1;
        w[t + 2] = 2;
        for (std::size_t k = 3; k <= t + 1; ++k) w[k] = Vertex(6 + k - 3);
        for (std::size_t k = 3; k <= t + 1; ++k) {
            edges.emplace_back(0, w[k]);
            edges.emplace_back(1, w[k]);
        }
        for (std::size_t k = 3; k <= t + 1; ++k) edges.emplace_back(w[k], w[k + 1]);
        g = Graph::from_edges(t + 5, std::move(edges));
        path = {5, 4, 3};
        for (std::size_t k = t + 2; k >= 3; --k) path.push_back(w[k]);
        w3 = w[3];
    }

    Vertex z = w3;
    for (std::size_t i = 1; i <= gamma / 2; ++i) {
        SurgeryResult r = surgery(g, 0, 1, z, i);
        g = std::move(r.graph);
        auto seg = r.step.path();
        path.insert(path.end(), seg.begin() + 1, seg.end());
        z = r.step.v6;
        tr.surgery_log.push_back(r.step);
    }
    tr.graph = std::move(g);
    tr.witness.dominating = {0, 1};
    tr.witness.validate(tr.graph);

    std::vector<Edge> spine{Edge(0, 1)};
    for (std::size_t i = 0; i < path.size(); ++i) {
        spine.emplace_back(0, path[i]);
        spine.emplace_back(1, path[i]);
        if (i + 1 < path.size()) spine.emplace_back(path[i], path[i + 1]);
    }
    std::sort(spine.begin(), spine.end());
    for (const Edge& e : tr.graph.edges()) {
        if (!std::binary_search(spine.begin(), spine.end(), e)) tr.added_edges.push_back(e);
    }
    return tr;
}

ExtremalCandidate build_extremal_candidates(std::size_t n, std::size_t gamma, std::size_t max_order) {
    if (gamma != 1 && gamma != 2) throw PreconditionError("extremal candidates are certified for gamma 1 and 2 only");
    if (n > max_order) throw ScaleRefusal("candidate order " + std::to_string(n) + " above " + std::to_string(max_order));
    const std::size_t r = gamma + 5; // host clique K6 or K7
    if (n < r) throw PreconditionError("K2 join K_" + std::to_string(gamma + 3) + "^{n-2} needs n >= " + std::to_string(r));

    EmbeddingScheme host = gamma == 1 ? k6_projective_scheme() : k7_torus_scheme();
    // Dominating pair and the two clique vertices receiving pendant paths.
    const Vertex u1 = gamma == 1 ? 1 : 5;
    const Vertex u2 = gamma == 1 ? 2 : 6;
    const Vertex ca = gamma == 1 ? 0 : 1;
    const Vertex cb = gamma == 1 ? 3 : 2;
    const std::size_t a = (n - r + 1) / 2;
    const std::size_t b = (n - r) / 2;

    for (auto [c, len] : {std::pair{ca, a}, std::pair{cb, b}}) {
        if (len == 0) continue;
        EmbeddingScheme inner = k2_join_path_planar(len + 1);
        host = splice_into_face(host, {u1, u2, c}, inner, {0, 1, Vertex(len + 2)}).scheme;
    }
    ExtremalCandidate out{host.graph(), host, u1, u2};
    if (trace_faces(out.scheme).genus != static_cast<long>(gamma)) {
        throw SpliceIntegrityError("candidate scheme has the wrong Euler genus");
    }
    return out;
}

} // namespace surfex
