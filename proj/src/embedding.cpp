#include "surfex/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include <json.hpp>

namespace surfex {

namespace {

std::string vname(Vertex v) { return std::to_string(v); }

// Dart-level view of a scheme. Dart (v, i) leaves v through rot[v][i].
struct Darts {
    std::size_t n = 0;
    std::vector<std::size_t> off;
    std::vector<Vertex> tail, head;
    std::vector<std::size_t> eid, mate;
    std::vector<int> sig;

    Darts(const std::vector<std::vector<Vertex>>& rot, const std::vector<Edge>& edges,
          const std::vector<int>& signature)
        : n(rot.size()), sig(signature) {
        off.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) off[v + 1] = off[v] + rot[v].size();
        const std::size_t d = off[n];
        tail.resize(d);
        head.resize(d);
        eid.resize(d);
        mate.resize(d);
        std::vector<std::size_t> first(edges.size(), d);
        for (Vertex v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < rot[v].size(); ++i) {
                const std::size_t k = off[v] + i;
                tail[k] = v;
                head[k] = rot[v][i];
                auto it = std::lower_bound(edges.begin(), edges.end(), Edge(v, rot[v][i]));
                eid[k] = static_cast<std::size_t>(it - edges.begin());
                if (first[eid[k]] == d) {
                    first[eid[k]] = k;
                } else {
                    mate[k] = first[eid[k]];
                    mate[first[eid[k]]] = k;
                }
            }
        }
    }

    std::size_t darts() const { return off[n]; }

    // State = 2 * dart + (orientation == -1).
    std::size_t next(std::size_t state) const {
        const std::size_t d = state >> 1;
        const int s = (state & 1) ? -1 : 1;
        const int s2 = s * sig[eid[d]];
        const std::size_t j = mate[d];
        const Vertex w = head[d];
        const std::size_t deg = off[w + 1] - off[w];
        const std::size_t local = j - off[w];
        const std::size_t i2 = s2 > 0 ? (local + 1) % deg : (local + deg - 1) % deg;
        return 2 * (off[w] + i2) + (s2 < 0);
    }

    std::size_t reverse(std::size_t state) const {
        const std::size_t d = state >> 1;
        const int s = (state & 1) ? -1 : 1;
        const int s2 = s * sig[eid[d]];
        return 2 * mate[d] + (s2 > 0);
    }

    template <class OnFace>
    std::size_t count_faces(std::vector<char>& seen, OnFace&& on_face) const {
        const std::size_t states = 2 * darts();
        seen.assign(states, 0);
        std::size_t f = 0;
        std::vector<std::size_t> orbit;
        for (std::size_t s0 = 0; s0 < states; ++s0) {
            if (seen[s0]) continue;
            orbit.clear();
            std::size_t s = s0;
            do {
                orbit.push_back(s);
                s = next(s);
            } while (s != s0);
            for (std::size_t x : orbit) seen[x] = seen[reverse(x)] = 1;
            on_face(orbit);
            ++f;
        }
        return f;
    }
};

std::vector<int> switch_values(const Graph& g, const std::vector<Edge>& edges, const std::vector<int>& sig) {
    const std::size_t n = g.order();
    std::vector<int> t(n, 0);
    std::vector<Vertex> stack;
    for (Vertex r = 0; r < n; ++r) {
        if (t[r]) continue;
        t[r] = 1;
        stack.push_back(r);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (t[w]) continue;
                auto it = std::lower_bound(edges.begin(), edges.end(), Edge(v, w));
                t[w] = t[v] * sig[static_cast<std::size_t>(it - edges.begin())];
                stack.push_back(w);
            }
        }
    }
    return t;
}

// Cyclic sequence up to rotation and reversal.
std::vector<Vertex> canonical_cycle(std::vector<Vertex> c) {
    if (c.empty()) return c;
    std::vector<Vertex> best;
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t r = 0; r < c.size(); ++r) {
            std::vector<Vertex> x(c.begin() + r, c.end());
            x.insert(x.end(), c.begin(), c.begin() + r);
            if (best.empty() || x < best) best = std::move(x);
        }
        std::reverse(c.begin(), c.end());
    }
    return best;
}

std::size_t position(const std::vector<Vertex>& rot, Vertex w) {
    auto it = std::find(rot.begin(), rot.end(), w);
    if (it == rot.end()) return rot.size();
    return static_cast<std::size_t>(it - rot.begin());
}

} // namespace

EmbeddingScheme::EmbeddingScheme(Graph graph, std::vector<std::vector<Vertex>> rotation,
                                 std::vector<int> signature)
    : graph_(std::move(graph)), rotation_(std::move(rotation)), signature_(std::move(signature)) {
    const std::size_t n = graph_.order();
    if (n == 0) throw PreconditionError("embedding scheme needs at least one vertex");
    if (rotation_.size() != n) {
        throw PreconditionError("rotation lists " + std::to_string(rotation_.size()) + " vertices, graph has " +
                                std::to_string(n));
    }
    edges_ = graph_.edges();
    if (signature_.size() != edges_.size()) throw PreconditionError("signature length differs from edge count");
    for (int s : signature_) {
        if (s != 1 && s != -1) throw PreconditionError("edge signs must be +1 or -1");
    }
    for (Vertex v = 0; v < n; ++v) {
        std::vector<Vertex> r = rotation_[v];
        std::sort(r.begin(), r.end());
        auto nb = graph_.neighbors(v);
        if (!std::equal(r.begin(), r.end(), nb.begin(), nb.end())) {
            throw PreconditionError("rotation at vertex " + vname(v) + " is not a cyclic order of its neighbours");
        }
    }
    if (!graph_.is_connected()) throw PreconditionError("embedding scheme requires a connected graph");
}

EmbeddingScheme EmbeddingScheme::orientable(Graph graph, std::vector<std::vector<Vertex>> rotation) {
    std::vector<int> sig(graph.size(), 1);
    return EmbeddingScheme(std::move(graph), std::move(rotation), std::move(sig));
}

EmbeddingScheme EmbeddingScheme::from_coordinates(const Graph& graph,
                                                  std::span<const std::pair<double, double>> xy) {
    if (xy.size() != graph.order()) throw PreconditionError("one coordinate pair per vertex required");
    std::vector<std::vector<Vertex>> rot(graph.order());
    for (Vertex v = 0; v < graph.order(); ++v) {
        auto nb = graph.neighbors(v);
        rot[v].assign(nb.begin(), nb.end());
        auto angle = [&](Vertex w) {
            return std::atan2(xy[w].second - xy[v].second, xy[w].first - xy[v].first);
        };
        std::sort(rot[v].begin(), rot[v].end(), [&](Vertex a, Vertex b) { return angle(a) < angle(b); });
    }
    return orientable(graph, std::move(rot));
}

EmbeddingScheme EmbeddingScheme::from_faces(std::size_t n, const std::vector<std::vector<Vertex>>& faces) {
    std::map<Edge, int> sides;
    GraphBuilder builder(n);
    for (const auto& face : faces) {
        if (face.size() < 3) throw PreconditionError("faces need at least three sides");
        for (std::size_t k = 0; k < face.size(); ++k) {
            Vertex a = face[k], b = face[(k + 1) % face.size()];
            if (a >= n || b >= n || a == b) throw PreconditionError("face side {" + vname(a) + "," + vname(b) + "} invalid");
            if (sides[Edge(a, b)]++ == 0) builder.add_edge(a, b);
        }
    }
    for (const auto& [e, c] : sides) {
        if (c != 2) {
            throw PreconditionError("edge {" + vname(e.u) + "," + vname(e.v) + "} lies on " + std::to_string(c) +
                                    " face sides");
        }
    }
    Graph g = std::move(builder).build();

    // Corners at each vertex: (face, position, previous, next).
    struct Corner {
        std::size_t face, pos;
        Vertex p, q;
    };
    std::vector<std::vector<Corner>> corners(n);
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& face = faces[fi];
        const std::size_t len = face.size();
        for (std::size_t k = 0; k < len; ++k) {
            corners[face[k]].push_back({fi, k, face[(k + len - 1) % len], face[(k + 1) % len]});
        }
    }

    std::vector<std::vector<int>> corner_sign(faces.size());
    for (std::size_t fi = 0; fi < faces.size(); ++fi) corner_sign[fi].assign(faces[fi].size(), 0);
    std::vector<std::vector<Vertex>> rot(n);
    for (Vertex v = 0; v < n; ++v) {
        auto& cs = corners[v];
        if (cs.size() != g.degree(v)) {
            throw PreconditionError("faces around vertex " + vname(v) + " do not form a single disc");
        }
        if (cs.empty()) continue;
        std::vector<char> used(cs.size(), 0);
        Vertex start = cs[0].p, cur = cs[0].p;
        for (std::size_t step = 0; step < cs.size(); ++step) {
            std::size_t pick = cs.size();
            for (std::size_t c = 0; c < cs.size(); ++c) {
                if (!used[c] && (cs[c].p == cur || cs[c].q == cur)) {
                    pick = c;
                    break;
                }
            }
            if (pick == cs.size()) {
                throw PreconditionError("faces around vertex " + vname(v) + " do not form a single disc");
            }
            used[pick] = 1;
            rot[v].push_back(cur);
            const bool forward = cs[pick].p == cur;
            corner_sign[cs[pick].face][cs[pick].pos] = forward ? 1 : -1;
            cur = forward ? cs[pick].q : cs[pick].p;
        }
        if (cur != start) throw PreconditionError("faces around vertex " + vname(v) + " do not close up");
    }

    const auto edges = g.edges();
    std::vector<int> sig(edges.size(), 0);
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& face = faces[fi];
        for (std::size_t k = 0; k < face.size(); ++k) {
            const std::size_t k2 = (k + 1) % face.size();
            const int s = corner_sign[fi][k] * corner_sign[fi][k2];
            auto id = static_cast<std::size_t>(
                std::lower_bound(edges.begin(), edges.end(), Edge(face[k], face[k2])) - edges.begin());
            if (sig[id] == 0) {
                sig[id] = s;
            } else if (sig[id] != s) {
                throw PreconditionError("faces disagree on the sign of edge {" + vname(edges[id].u) + "," +
                                        vname(edges[id].v) + "}");
            }
        }
    }

    EmbeddingScheme out(std::move(g), std::move(rot), std::move(sig));
    auto traced = trace_faces(out).faces;
    std::vector<std::vector<Vertex>> want(faces.begin(), faces.end());
    for (auto& f : traced) f = canonical_cycle(f);
    for (auto& f : want) f = canonical_cycle(f);
    std::sort(traced.begin(), traced.end());
    std::sort(want.begin(), want.end());
    if (traced != want) throw PreconditionError("face list is not realised by any rotation system");
    return out;
}

std::size_t EmbeddingScheme::edge_id(Vertex u, Vertex v) const {
    Edge e(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) {
        throw PreconditionError("no edge {" + vname(u) + "," + vname(v) + "} in scheme");
    }
    return static_cast<std::size_t>(it - edges_.begin());
}

Vertex EmbeddingScheme::succ(Vertex v, Vertex w) const {
    const auto& r = rotation_[v];
    std::size_t i = position(r, w);
    if (i == r.size()) throw PreconditionError(vname(w) + " is not a neighbour of " + vname(v));
    return r[(i + 1) % r.size()];
}

Vertex EmbeddingScheme::pred(Vertex v, Vertex w) const {
    const auto& r = rotation_[v];
    std::size_t i = position(r, w);
    if (i == r.size()) throw PreconditionError(vname(w) + " is not a neighbour of " + vname(v));
    return r[(i + r.size() - 1) % r.size()];
}

EmbeddingScheme EmbeddingScheme::switched(Vertex v) const {
    EmbeddingScheme out = *this;
    std::reverse(out.rotation_[v].begin(), out.rotation_[v].end());
    for (Vertex w : graph_.neighbors(v)) out.signature_[edge_id(v, w)] *= -1;
    return out;
}

EmbeddingScheme EmbeddingScheme::mirrored() const {
    EmbeddingScheme out = *this;
    for (auto& r : out.rotation_) std::reverse(r.begin(), r.end());
    return out;
}

EmbeddingScheme EmbeddingScheme::normalized() const {
    auto t = switch_values(graph_, edges_, signature_);
    EmbeddingScheme out = *this;
    for (Vertex v = 0; v < order(); ++v) {
        if (t[v] < 0) std::reverse(out.rotation_[v].begin(), out.rotation_[v].end());
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) out.signature_[k] *= t[edges_[k].u] * t[edges_[k].v];
    return out;
}

std::string EmbeddingScheme::to_json() const {
    // One rotation per line; nlohmann would put every entry on its own.
    std::string out = "{\n  \"schema_version\": 1,\n  \"n\": " + std::to_string(order()) + ",\n  \"rotation\": [";
    for (std::size_t v = 0; v < rotation_.size(); ++v) {
        out += v ? ",\n    " : "\n    ";
        out += nlohmann::json(rotation_[v]).dump();
    }
    out += rotation_.empty() ? "],\n  \"signature\": {" : "\n  ],\n  \"signature\": {";
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        out += k ? ",\n    " : "\n    ";
        out += "\"" + vname(edges_[k].u) + "-" + vname(edges_[k].v) + "\": " + std::to_string(signature_[k]);
    }
    out += edges_.empty() ? "}\n}" : "\n  }\n}";
    return out;
}

EmbeddingScheme EmbeddingScheme::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scheme JSON: ") + e.what(), e.byte);
    }
    try {
        const std::size_t n = j.at("n").get<std::size_t>();
        auto rot = j.at("rotation").get<std::vector<std::vector<long long>>>();
        if (rot.size() != n) throw PreconditionError("rotation has " + std::to_string(rot.size()) + " entries, n = " + std::to_string(n));
        std::vector<std::vector<Vertex>> rotation(n);
        std::vector<Edge> edges;
        for (Vertex v = 0; v < n; ++v) {
            for (long long w : rot[v]) {
                if (w < 0 || static_cast<std::size_t>(w) >= n || static_cast<Vertex>(w) == v) {
                    throw PreconditionError("rotation at vertex " + vname(v) + " has invalid entry " + std::to_string(w));
                }
                rotation[v].push_back(static_cast<Vertex>(w));
                if (static_cast<Vertex>(w) > v) edges.emplace_back(v, static_cast<Vertex>(w));
            }
            auto sorted = rotation[v];
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                throw PreconditionError("rotation at vertex " + vname(v) + " repeats a neighbour");
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            for (Vertex w : rotation[v]) {
                if (position(rotation[w], v) == rotation[w].size()) {
                    throw PreconditionError("rotation at vertex " + vname(w) + " is missing neighbour " + vname(v));
                }
            }
        }
        Graph g = Graph::from_edges(n, edges);
        const auto sorted_edges = g.edges();
        std::vector<int> sig(sorted_edges.size(), 1);
        if (j.contains("signature")) {
            for (const auto& [key, value] : j.at("signature").items()) {
                auto dash = key.find('-');
                if (dash == std::string::npos) throw PreconditionError("signature key '" + key + "' is not u-v");
                Vertex a = static_cast<Vertex>(std::stoul(key.substr(0, dash)));
                Vertex b = static_cast<Vertex>(std::stoul(key.substr(dash + 1)));
                auto it = std::lower_bound(sorted_edges.begin(), sorted_edges.end(), Edge(a, b));
                if (it == sorted_edges.end() || *it != Edge(a, b)) {
                    throw PreconditionError("signature names non-edge " + key);
                }
                sig[static_cast<std::size_t>(it - sorted_edges.begin())] = value.get<int>();
            }
        }
        return EmbeddingScheme(std::move(g), std::move(rotation), std::move(sig));
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("scheme JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw PreconditionError("scheme JSON: malformed signature key");
    }
}

FaceTrace trace_faces(const EmbeddingScheme& s) {
    const Graph& g = s.graph();
    if (!g.is_connected()) throw PreconditionError("face tracing requires a connected graph");
    FaceTrace out;
    const long n = static_cast<long>(g.order());
    const long e = static_cast<long>(g.size());
    if (e == 0) {
        out.faces.push_back({0});
        out.f = 1;
    } else {
        Darts d(s.rotations(), s.edge_list(), s.signature());
        std::vector<char> seen;
        out.f = d.count_faces(seen, [&](const std::vector<std::size_t>& orbit) {
            std::vector<Vertex> face;
            face.reserve(orbit.size());
            for (std::size_t st : orbit) face.push_back(d.tail[st >> 1]);
            out.faces.push_back(std::move(face));
        });
    }
    out.genus = 2 - n + e - static_cast<long>(out.f);
    out.orientable = is_orientable(s);
    return out;
}

bool is_orientable(const EmbeddingScheme& s) {
    const auto& edges = s.edge_list();
    const auto& sig = s.signature();
    auto t = switch_values(s.graph(), edges, sig);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (sig[k] != t[edges[k].u] * t[edges[k].v]) return false;
    }
    return true;
}

SplicedScheme splice_into_face(const EmbeddingScheme& host_in, std::array<Vertex, 3> face,
                               const EmbeddingScheme& inner_in, std::array<Vertex, 3> outer) {
    const std::size_t nh = host_in.order();
    const std::size_t ni = inner_in.order();
    for (int k = 0; k < 3; ++k) {
        if (face[k] >= nh) throw PreconditionError("host face vertex out of range");
        if (outer[k] >= ni) throw PreconditionError("inner face vertex out of range");
    }
    const FaceTrace host_trace = trace_faces(host_in);
    const FaceTrace inner_trace = trace_faces(inner_in);
    if (inner_trace.genus != 0) throw PreconditionError("inner scheme is not planar");

    auto same_set = [](std::vector<Vertex> a, std::array<Vertex, 3> b) {
        if (a.size() != 3) return false;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return std::equal(a.begin(), a.end(), b.begin());
    };

    // Locate the host face as a state orbit and switch it to orientation +1.
    EmbeddingScheme host = host_in;
    {
        Darts d(host.rotations(), host.edge_list(), host.signature());
        std::vector<char> seen;
        std::vector<std::size_t> found;
        d.count_faces(seen, [&](const std::vector<std::size_t>& orbit) {
            if (!found.empty()) return;
            std::vector<Vertex> vs;
            for (std::size_t st : orbit) vs.push_back(d.tail[st >> 1]);
            if (same_set(vs, face)) found = orbit;
        });
        if (found.empty()) {
            throw PreconditionError("{" + vname(face[0]) + "," + vname(face[1]) + "," + vname(face[2]) +
                                    "} is not a 3-face of the host scheme");
        }
        // An orbit leaves its vertex with orientation s; switching flips it there only.
        for (std::size_t st : found) {
            if (st & 1) host = host.switched(d.tail[st >> 1]);
        }
    }
    // Host cyclic order t0 t1 t2 with the face in the gap succ(prev) = next.
    std::array<Vertex, 3> cyc{};
    {
        Vertex a = face[0];
        Vertex b = face[1];
        Vertex c = face[2];
        if (host.succ(b, a) == c) {
            cyc = {a, b, c};
        } else {
            cyc = {a, c, b};
        }
        for (int k = 0; k < 3; ++k) {
            if (host.succ(cyc[(k + 1) % 3], cyc[k]) != cyc[(k + 2) % 3]) {
                throw PreconditionError("host face is not a triangle bounded by a single corner at each vertex");
            }
        }
    }

    std::map<Vertex, Vertex> to_inner; // host triangle vertex -> inner vertex
    for (int k = 0; k < 3; ++k) to_inner[face[k]] = outer[k];

    EmbeddingScheme inner = inner_in.normalized();
    if (!is_orientable(inner)) throw PreconditionError("inner scheme is not planar");
    auto consistent = [&](const EmbeddingScheme& sc) {
        for (int k = 0; k < 3; ++k) {
            Vertex a = to_inner[cyc[k]], t = to_inner[cyc[(k + 1) % 3]], b = to_inner[cyc[(k + 2) % 3]];
            if (!sc.graph().has_edge(t, a) || !sc.graph().has_edge(t, b)) return false;
            if (sc.succ(t, b) != a) return false;
        }
        return true;
    };
    if (!consistent(inner)) {
        inner = inner.mirrored();
        if (!consistent(inner)) throw PreconditionError("designated inner triangle is not a face of the inner scheme");
    }
    (void)inner_trace;

    SplicedScheme out;
    out.inner_to_merged.assign(ni, 0);
    std::vector<char> is_outer(ni, 0);
    for (int k = 0; k < 3; ++k) {
        out.inner_to_merged[outer[k]] = face[k];
        is_outer[outer[k]] = 1;
    }
    Vertex next = static_cast<Vertex>(nh);
    for (Vertex v = 0; v < ni; ++v) {
        if (!is_outer[v]) out.inner_to_merged[v] = next++;
    }
    const auto& m = out.inner_to_merged;

    std::vector<std::vector<Vertex>> rot(next);
    for (Vertex v = 0; v < nh; ++v) rot[v] = host.rotation(v);
    for (int k = 0; k < 3; ++k) {
        const Vertex a = cyc[k], t = cyc[(k + 1) % 3];
        const Vertex ti = to_inner[t], ai = to_inner[a], bi = to_inner[cyc[(k + 2) % 3]];
        std::vector<Vertex> wedge;
        for (Vertex w = inner.succ(ti, ai); w != bi; w = inner.succ(ti, w)) wedge.push_back(m[w]);
        auto& r = rot[t];
        auto at = r.begin() + static_cast<std::ptrdiff_t>(position(r, a)) + 1;
        r.insert(at, wedge.begin(), wedge.end());
    }
    for (Vertex v = 0; v < ni; ++v) {
        if (is_outer[v]) continue;
        for (Vertex w : inner.rotation(v)) rot[m[v]].push_back(m[w]);
    }

    std::vector<Edge> edges = host.edge_list();
    std::vector<std::pair<Edge, int>> signs;
    for (std::size_t k = 0; k < edges.size(); ++k) signs.emplace_back(edges[k], host.signature()[k]);
    for (const Edge& e : inner.edge_list()) {
        if (is_outer[e.u] && is_outer[e.v]) continue;
        edges.emplace_back(m[e.u], m[e.v]);
        signs.emplace_back(Edge(m[e.u], m[e.v]), inner.sign(e.u, e.v));
    }
    Graph g = Graph::from_edges(next, edges);
    std::sort(signs.begin(), signs.end());
    std::vector<int> sig;
    for (const auto& [e, s] : signs) sig.push_back(s);
    out.scheme = EmbeddingScheme(std::move(g), std::move(rot), std::move(sig));

    const long genus = trace_faces(out.scheme).genus;
    if (genus != host_trace.genus) {
        throw SpliceIntegrityError("splice changed Euler genus from " + std::to_string(host_trace.genus) + " to " +
                                   std::to_string(genus));
    }
    return out;
}

long euler_genus_floor(const Graph& g) {
    const long n = static_cast<long>(g.order());
    const long e = static_cast<long>(g.size());
    const long num = e - 3 * n + 6;
    if (num <= 0) return 0;
    return (num + 2) / 3;
}

namespace {

// Mutable rotation/sign state for the brute-force search.
struct GenusSearch {
    const Graph& g;
    std::vector<Edge> edges;
    std::vector<std::size_t> cotree; // edge ids off the spanning tree
    std::vector<std::vector<Vertex>> rot;
    std::vector<int> sig;

    explicit GenusSearch(const Graph& graph) : g(graph), edges(graph.edges()) {
        const std::size_t n = g.order();
        rot.resize(n);
        for (Vertex v = 0; v < n; ++v) {
            auto nb = g.neighbors(v);
            rot[v].assign(nb.begin(), nb.end());
        }
        sig.assign(edges.size(), 1);
        std::vector<char> in_tree(edges.size(), 0), seen(n, 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (seen[w]) continue;
                seen[w] = 1;
                in_tree[static_cast<std::size_t>(
                    std::lower_bound(edges.begin(), edges.end(), Edge(v, w)) - edges.begin())] = 1;
                stack.push_back(w);
            }
        }
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (!in_tree[k]) cotree.push_back(k);
        }
    }

    long genus() const {
        Darts d(rot, edges, sig);
        std::vector<char> seen;
        const std::size_t f = d.count_faces(seen, [](const std::vector<std::size_t>&) {});
        return 2 - static_cast<long>(g.order()) + static_cast<long>(g.size()) - static_cast<long>(f);
    }

    // Next rotation system in lexicographic order (first entry of each list fixed).
    bool next_rotation() {
        for (auto& r : rot) {
            if (r.size() > 2 && std::next_permutation(r.begin() + 1, r.end())) return true;
        }
        return false;
    }

    bool next_signature() {
        for (std::size_t k : cotree) {
            if (sig[k] == 1) {
                sig[k] = -1;
                return true;
            }
            sig[k] = 1;
        }
        return false;
    }

    EmbeddingScheme scheme() const { return EmbeddingScheme(g, rot, sig); }
};

double rotation_count(const Graph& g) {
    double total = 1;
    for (Vertex v = 0; v < g.order(); ++v) {
        for (std::size_t k = 2; k < g.degree(v); ++k) total *= static_cast<double>(k);
    }
    return total;
}

} // namespace

GenusResult min_euler_genus(const Graph& g, bool orientable_only, const GenusLimits& limits) {
    if (g.order() == 0 || !g.is_connected()) throw PreconditionError("genus search requires a connected graph");
    const long floor = euler_genus_floor(g);
    GenusSearch search(g);
    const double rotations = rotation_count(g);
    const double signatures = orientable_only ? 1.0 : std::pow(2.0, static_cast<double>(search.cotree.size()));

    GenusResult result;
    result.genus = std::numeric_limits<long>::max();

    if (rotations * signatures <= limits.max_schemes) {
        // Orientable pass.
        do {
            long gen = search.genus();
            result.schemes_examined += 1;
            if (gen < result.genus) {
                result.genus = gen;
                result.certificate = search.scheme();
                result.orientable = true;
                if (gen <= floor) return result;
            }
        } while (search.next_rotation());
        if (!orientable_only) {
            for (auto& r : search.rot) std::sort(r.begin(), r.end());
            do {
                while (search.next_signature()) {
                    long gen = search.genus();
                    result.schemes_examined += 1;
                    if (gen < result.genus) {
                        result.genus = gen;
                        result.certificate = search.scheme();
                        result.orientable = is_orientable(result.certificate);
                        if (gen <= floor) return result;
                    }
                }
            } while (search.next_rotation());
        }
        return result;
    }

    // A triangulation sits exactly on the floor.
    if ((g.size() + 6) % 3 == 0 && static_cast<long>(g.size()) - 3 * static_cast<long>(g.order()) + 6 >= 0) {
        try {
            if (auto t = find_triangulation(g)) {
                const bool ori = is_orientable(*t);
                if (ori || !orientable_only) {
                    result.genus = floor;
                    result.certificate = ori ? t->normalized() : *t;
                    result.orientable = ori;
                    result.schemes_examined = 1;
                    return result;
                }
            }
        } catch (const ScaleRefusal&) {
        }
    }

    // Simulated annealing over rotation swaps and co-tree sign flips.
    result.exhaustive = false;
    std::mt19937_64 rng(limits.seed);
    std::vector<Vertex> movable;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) > 2) movable.push_back(v);
    }
    const bool flips = !orientable_only && !search.cotree.empty();
    if (movable.empty() && !flips) {
        result.genus = search.genus();
        result.certificate = search.scheme();
        result.orientable = true;
        return result;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t restart = 0; restart < limits.anneal_restarts; ++restart) {
        for (auto& r : search.rot) std::shuffle(r.begin(), r.end(), rng);
        std::fill(search.sig.begin(), search.sig.end(), 1);
        long cur = search.genus();
        for (std::size_t step = 0; step < limits.anneal_steps; ++step) {
            const double temp = 2.0 * (1.0 - static_cast<double>(step) / static_cast<double>(limits.anneal_steps)) + 0.01;
            const bool do_flip = flips && (movable.empty() || unit(rng) < 0.25);
            std::size_t k = 0, i = 0, j = 0;
            Vertex v = 0;
            if (do_flip) {
                k = search.cotree[rng() % search.cotree.size()];
                search.sig[k] = -search.sig[k];
            } else {
                v = movable[rng() % movable.size()];
                i = rng() % search.rot[v].size();
                j = rng() % search.rot[v].size();
                std::swap(search.rot[v][i], search.rot[v][j]);
            }
            const long cand = search.genus();
            result.schemes_examined += 1;
            if (cand <= cur || unit(rng) < std::exp(static_cast<double>(cur - cand) / temp)) {
                cur = cand;
                if (cur < result.genus) {
                    result.genus = cur;
                    result.certificate = search.scheme();
                    result.orientable = is_orientable(result.certificate);
                    if (cur <= floor) return result;
                }
            } else if (do_flip) {
                search.sig[k] = -search.sig[k];
            } else {
                std::swap(search.rot[v][i], search.rot[v][j]);
            }
        }
    }
    return result;
}

namespace {

struct LinkSearch {
    const Graph& g;
    std::size_t budget;
    std::size_t total = 0;
    std::vector<std::vector<std::vector<Vertex>>> cycles;
    std::vector<std::size_t> order;
    std::vector<int> choice;

    LinkSearch(const Graph& graph, std::size_t cap) : g(graph), budget(cap), cycles(graph.order()) {}

    void enumerate(Vertex v) {
        auto span = g.neighbors(v);
        std::vector<Vertex> N(span.begin(), span.end());
        if (N.size() < 3) return;
        std::vector<char> used(g.order(), 0);
        std::vector<Vertex> path{N[0]};
        used[N[0]] = 1;
        auto rec = [&](auto&& self) -> void {
            if (path.size() == N.size()) {
                // one direction per cycle
                if (g.has_edge(path.back(), N[0]) && path[1] < path.back()) {
                    cycles[v].push_back(path);
                    if (++total > budget) throw ScaleRefusal("triangulation search: too many link cycles");
                }
                return;
            }
            for (Vertex w : N) {
                if (used[w] || !g.has_edge(path.back(), w)) continue;
                used[w] = 1;
                path.push_back(w);
                self(self);
                path.pop_back();
                used[w] = 0;
            }
        };
        rec(rec);
    }

    static std::pair<Vertex, Vertex> around(const std::vector<Vertex>& c, Vertex w) {
        const std::size_t k = c.size();
        for (std::size_t i = 0; i < k; ++i) {
            if (c[i] != w) continue;
            Vertex a = c[(i + k - 1) % k], b = c[(i + 1) % k];
            return {std::min(a, b), std::max(a, b)};
        }
        return {0, 0};
    }

    bool consistent(Vertex v, const std::vector<Vertex>& c) const {
        for (Vertex w : g.neighbors(v)) {
            if (choice[w] < 0) continue;
            if (around(c, w) != around(cycles[w][static_cast<std::size_t>(choice[w])], v)) return false;
        }
        return true;
    }

    bool closes() const {
        std::map<std::array<Vertex, 3>, int> count;
        for (Vertex u = 0; u < g.order(); ++u) {
            const auto& c = cycles[u][static_cast<std::size_t>(choice[u])];
            for (std::size_t i = 0; i < c.size(); ++i) {
                std::array<Vertex, 3> t{u, c[i], c[(i + 1) % c.size()]};
                std::sort(t.begin(), t.end());
                ++count[t];
            }
        }
        return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 3; });
    }

    bool search(std::size_t k) {
        if (k == order.size()) return closes();
        Vertex v = static_cast<Vertex>(order[k]);
        for (std::size_t c = 0; c < cycles[v].size(); ++c) {
            if (!consistent(v, cycles[v][c])) continue;
            choice[v] = static_cast<int>(c);
            if (search(k + 1)) return true;
            choice[v] = -1;
        }
        return false;
    }
};

} // namespace

std::optional<EmbeddingScheme> find_triangulation(const Graph& g, std::size_t max_link_cycles) {
    const std::size_t n = g.order();
    if (n < 4 || !g.is_connected()) return std::nullopt;
    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) < 3) return std::nullopt;
    }
    LinkSearch ls(g, max_link_cycles);
    for (Vertex v = 0; v < n; ++v) {
        ls.enumerate(v);
        if (ls.cycles[v].empty()) return std::nullopt;
    }
    // fewest choices first, then stay adjacent to what is already fixed
    std::vector<char> placed(n, 0);
    std::vector<std::size_t> fixed_nbrs(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = n;
        for (Vertex v = 0; v < n; ++v) {
            if (placed[v]) continue;
            if (best == n || fixed_nbrs[v] > fixed_nbrs[best] ||
                (fixed_nbrs[v] == fixed_nbrs[best] && ls.cycles[v].size() < ls.cycles[best].size()))
                best = v;
        }
        placed[best] = 1;
        ls.order.push_back(best);
        for (Vertex w : g.neighbors(static_cast<Vertex>(best))) ++fixed_nbrs[w];
    }
    ls.choice.assign(n, -1);
    if (!ls.search(0)) return std::nullopt;

    std::vector<std::vector<Vertex>> faces;
    for (Vertex u = 0; u < n; ++u) {
        const auto& c = ls.cycles[u][static_cast<std::size_t>(ls.choice[u])];
        for (std::size_t i = 0; i < c.size(); ++i) {
            Vertex a = c[i], b = c[(i + 1) % c.size()];
            if (u < a && u < b) faces.push_back({u, a, b});
        }
    }
    return EmbeddingScheme::from_faces(n, faces);
}


TriangulationReport verify_triangulation_facecounts(const EmbeddingScheme& s, Vertex u1, Vertex u2) {
    const Graph& g = s.graph();
    const std::size_t n = g.order();
    if (u1 >= n || u2 >= n || u1 == u2) throw PreconditionError("invalid dominating pair");
    if (g.degree(u1) != n - 1 || g.degree(u2) != n - 1) {
        throw PreconditionError("vertices " + vname(u1) + ", " + vname(u2) + " are not both dominating");
    }
    const FaceTrace trace = trace_faces(s);
    for (const auto& f : trace.faces) {
        if (f.size() != 3) throw PreconditionError("face of length " + std::to_string(f.size()) + " in a triangulation check");
    }

    TriangulationReport rep;
    rep.genus = trace.genus;
    rep.expected_avoiding = static_cast<std::size_t>(2 * std::max(0L, trace.genus));

    std::vector<std::vector<std::size_t>> at(n);
    for (std::size_t fi = 0; fi < trace.faces.size(); ++fi) {
        for (Vertex v : trace.faces[fi]) at[v].push_back(fi);
    }
    std::vector<char> avoiding(trace.faces.size(), 0);
    for (std::size_t fi = 0; fi < trace.faces.size(); ++fi) {
        const auto& f = trace.faces[fi];
        avoiding[fi] = std::find(f.begin(), f.end(), u1) == f.end() && std::find(f.begin(), f.end(), u2) == f.end();
        rep.faces_avoiding += avoiding[fi];
    }

    // Wheel test: the opposite sides of the faces at v form one cycle through N(v).
    for (Vertex v = 0; v < n; ++v) {
        bool ok = at[v].size() == g.degree(v);
        std::map<Vertex, std::vector<Vertex>> link;
        if (ok) {
            for (std::size_t fi : at[v]) {
                std::vector<Vertex> opp;
                for (Vertex w : trace.faces[fi]) {
                    if (w != v) opp.push_back(w);
                }
                if (opp.size() != 2) {
                    ok = false;
                    break;
                }
                link[opp[0]].push_back(opp[1]);
                link[opp[1]].push_back(opp[0]);
            }
        }
        if (ok) {
            ok = link.size() == g.degree(v) &&
                 std::all_of(link.begin(), link.end(), [](const auto& kv) { return kv.second.size() == 2; });
        }
        if (ok && !link.empty()) {
            Vertex start = link.begin()->first, prev = start, cur = link.begin()->second[0];
            std::size_t steps = 1;
            while (cur != start && steps <= link.size()) {
                const auto& nb = link[cur];
                Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
                prev = cur;
                cur = nxt;
                ++steps;
            }
            ok = cur == start && steps == link.size();
        }
        if (!ok) rep.non_wheel.push_back(v);
    }
    rep.wheels_ok = rep.non_wheel.empty();

    const auto& r = s.rotation(u1);
    const std::size_t k = position(r, u2);
    for (std::size_t i = 1; i < r.size(); ++i) rep.path.push_back(r[(k + i) % r.size()]);
    for (std::size_t i = 1; i + 1 < rep.path.size(); ++i) {
        const Vertex v = rep.path[i];
        std::size_t observed = 0;
        for (std::size_t fi : at[v]) observed += avoiding[fi];
        const std::size_t expected = g.degree(v) >= 4 ? g.degree(v) - 4 : 0;
        rep.private_faces.push_back({v, observed, expected});
        if (observed != expected) rep.private_ok = false;
    }
    return rep;
}

EmbeddingScheme k6_projective_scheme() {
    const std::vector<std::vector<Vertex>> faces = {
        {1, 2, 3}, {1, 2, 5}, {1, 4, 5}, {1, 4, 6}, {1, 3, 6},
        {2, 3, 4}, {3, 4, 5}, {3, 5, 6}, {2, 4, 6}, {2, 5, 6},
    };
    std::vector<std::vector<Vertex>> zero;
    for (auto f : faces) {
        for (auto& v : f) --v;
        zero.push_back(f);
    }
    return EmbeddingScheme::from_faces(6, zero);
}

EmbeddingScheme k7_torus_scheme() {
    const std::vector<std::vector<Vertex>> faces = {
        {1, 6, 2}, {1, 4, 6}, {6, 4, 5}, {6, 5, 3}, {6, 7, 2}, {6, 3, 7}, {2, 7, 4},
        {2, 4, 3}, {5, 2, 3}, {5, 1, 2}, {7, 3, 1}, {7, 1, 5}, {7, 5, 4}, {4, 1, 3},
    };
    std::vector<std::vector<Vertex>> zero;
    for (auto f : faces) {
        for (auto& v : f) --v;
        zero.push_back(f);
    }
    return EmbeddingScheme::from_faces(7, zero);
}

EmbeddingScheme k2_join_path_planar(std::size_t m) {
    if (m == 0) throw PreconditionError("path needs at least one vertex");
    GraphBuilder b(m + 2);
    b.add_edge(0, 1);
    std::vector<std::pair<double, double>> xy{{-1.0, 0.0}, {1.0, 0.0}};
    for (std::size_t i = 0; i < m; ++i) {
        const auto p = static_cast<Vertex>(i + 2);
        b.add_edge(0, p);
        b.add_edge(1, p);
        if (i + 1 < m) b.add_edge(p, p + 1);
        xy.emplace_back(0.0, static_cast<double>(i + 1));
    }
    return EmbeddingScheme::from_coordinates(std::move(b).build(), xy);
}

} // namespace surfex
