#include "surfex/extremal.hpp"

#include "surfex/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "surfex/canonical.hpp"
#include "surfex/error.hpp"
#include "surfex/families.hpp"
#include "surfex/spectral.hpp"

namespace surfex {

namespace {

using Mask = std::uint64_t;

inline Mask bit(unsigned v) { return Mask{1} << v; }
inline unsigned low(Mask m) { return static_cast<unsigned>(std::countr_zero(m)); }
inline unsigned pop(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

// Graph on at most 64 vertices as adjacency bit rows plus a live-vertex mask.
struct MaskGraph {
    std::vector<Mask> rows;
    Mask alive = 0;

    static MaskGraph from(const Graph& g) {
        MaskGraph m;
        m.rows.assign(g.order(), 0);
        for (Vertex v = 0; v < g.order(); ++v) {
            for (Vertex w : g.neighbors(v)) m.rows[v] |= bit(w);
        }
        m.alive = g.order() == 64 ? ~Mask{0} : bit(static_cast<unsigned>(g.order())) - 1;
        return m;
    }

    unsigned order() const { return pop(alive); }
    unsigned deg(unsigned v) const { return pop(rows[v]); }
    std::size_t edges() const {
        std::size_t e = 0;
        for (Mask a = alive; a; a &= a - 1) e += deg(low(a));
        return e / 2;
    }
    void remove(unsigned v) {
        for (Mask nb = rows[v]; nb; nb &= nb - 1) rows[low(nb)] &= ~bit(v);
        rows[v] = 0;
        alive &= ~bit(v);
    }
    void remove_edge(unsigned u, unsigned v) {
        rows[u] &= ~bit(v);
        rows[v] &= ~bit(u);
    }
    // v merges into u.
    void contract(unsigned u, unsigned v) {
        const Mask nb = rows[v] & ~bit(u);
        remove(v);
        for (Mask x = nb; x; x &= x - 1) rows[low(x)] |= bit(u);
        rows[u] |= nb;
    }
    MaskGraph restricted(Mask keep) const {
        MaskGraph m = *this;
        for (Mask x = alive & ~keep; x; x &= x - 1) m.remove(low(x));
        return m;
    }
    Mask component_of(unsigned v) const {
        Mask seen = bit(v), frontier = bit(v);
        while (frontier) {
            Mask next = 0;
            for (Mask x = frontier; x; x &= x - 1) next |= rows[low(x)];
            frontier = next & ~seen;
            seen |= next;
        }
        return seen;
    }
    Graph to_graph() const {
        std::vector<Vertex> index(rows.size(), 0);
        Vertex k = 0;
        for (Mask a = alive; a; a &= a - 1) index[low(a)] = k++;
        std::vector<Edge> e;
        for (Mask a = alive; a; a &= a - 1) {
            const unsigned v = low(a);
            for (Mask nb = rows[v] & ~(bit(v + 1) - 1); nb; nb &= nb - 1) e.emplace_back(index[v], index[low(nb)]);
        }
        return Graph::from_edges(k, std::move(e));
    }
};

// Largest |N(C)| over connected C, stopping once `target` is reached.
unsigned boundary_search(const MaskGraph& g, unsigned target) {
    unsigned best = 0;
    bool done = false;
    auto grow = [&](auto&& self, Mask c, Mask nc, Mask cand, Mask ban) -> void {
        best = std::max(best, pop(nc));
        if (best >= target) {
            done = true;
            return;
        }
        Mask rest = cand;
        while (rest && !done) {
            const unsigned v = low(rest);
            rest &= rest - 1;
            const Mask c2 = c | bit(v);
            const Mask nc2 = (nc | g.rows[v]) & ~c2;
            self(self, c2, nc2, (rest | g.rows[v]) & ~c2 & ~ban, ban);
            ban |= bit(v);
        }
    };
    Mask lower = 0;
    for (Mask a = g.alive; a && !done; a &= a - 1) {
        const unsigned r = low(a);
        grow(grow, bit(r), g.rows[r], g.rows[r] & ~lower, lower);
        lower |= bit(r);
    }
    return best;
}

struct Pattern {
    Graph h;
    std::vector<Mask> rows;
    unsigned n = 0;
    std::size_t e = 0;
    unsigned min_deg = 0;
    bool connected = true;
    bool deg2_independent = false;
    std::vector<unsigned> order; // embedding order for subgraph search
    std::vector<unsigned> degs;

    explicit Pattern(const Graph& graph) : h(graph) {
        MaskGraph m = MaskGraph::from(graph);
        rows = m.rows;
        n = static_cast<unsigned>(graph.order());
        e = graph.size();
        min_deg = static_cast<unsigned>(graph.min_degree());
        connected = graph.is_connected();
        degs.resize(n);
        for (unsigned v = 0; v < n; ++v) degs[v] = pop(rows[v]);
        deg2_independent = min_deg == 2;
        for (unsigned v = 0; v < n; ++v) {
            if (degs[v] != 2) continue;
            for (Mask nb = rows[v]; nb; nb &= nb - 1) {
                if (degs[low(nb)] == 2) deg2_independent = false;
            }
        }
        // Greedy order: highest degree first, then most already-placed neighbours.
        Mask placed = 0;
        while (order.size() < n) {
            unsigned pick = n;
            for (unsigned v = 0; v < n; ++v) {
                if (placed & bit(v)) continue;
                if (pick == n) {
                    pick = v;
                    continue;
                }
                auto key = [&](unsigned x) { return std::pair(pop(rows[x] & placed), degs[x]); };
                if (key(v) > key(pick)) pick = v;
            }
            order.push_back(pick);
            placed |= bit(pick);
        }
    }
};

class GenericMinor {
public:
    explicit GenericMinor(const Pattern& p) : p_(p) {}

    bool run(MaskGraph g) {
        reduce(g);
        if (p_.connected && p_.min_deg > 0 && g.alive) {
            const unsigned first = low(g.alive);
            const Mask comp = g.component_of(first);
            if (comp != g.alive) {
                for (Mask rest = g.alive; rest;) {
                    const Mask c = g.component_of(low(rest));
                    if (run(g.restricted(c))) return true;
                    rest &= ~c;
                }
                return false;
            }
        }
        const unsigned n = g.order();
        const std::size_t e = g.edges();
        if (n < p_.n || e < p_.e) return false;
        if (embeds(g)) return true;
        if (n == p_.n) return false;
        CanonicalForm key = canonical_form(g.to_graph());
        if (dead_.count(key)) return false;

        // Some contraction of G contains H as a subgraph.
        for (Mask a = g.alive; a; a &= a - 1) {
            const unsigned u = low(a);
            for (Mask nb = g.rows[u] & ~(bit(u + 1) - 1); nb; nb &= nb - 1) {
                MaskGraph c = g;
                c.contract(u, low(nb));
                if (run(std::move(c))) return true;
            }
        }
        dead_.insert(std::move(key));
        return false;
    }

private:
    void reduce(MaskGraph& g) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (Mask a = g.alive; a; a &= a - 1) {
                const unsigned v = low(a);
                if (!(g.alive & bit(v))) continue;
                const unsigned d = g.deg(v);
                if ((d == 0 && p_.min_deg >= 1) || (d == 1 && p_.min_deg >= 2)) {
                    g.remove(v);
                    changed = true;
                } else if (d == 2 && p_.min_deg >= 3) {
                    g.contract(low(g.rows[v]), v);
                    changed = true;
                } else if (d == 2 && p_.deg2_independent) {
                    for (Mask nb = g.rows[v]; nb; nb &= nb - 1) {
                        const unsigned w = low(nb);
                        if (g.deg(w) == 2) {
                            g.contract(w, v);
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
    }

    // Subgraph (not necessarily induced) copy of the pattern.
    bool embeds(const MaskGraph& g) const {
        std::vector<unsigned> image(p_.n, 0);
        auto place = [&](auto&& self, std::size_t k, Mask used) -> bool {
            if (k == p_.order.size()) return true;
            const unsigned hv = p_.order[k];
            Mask cand = g.alive & ~used;
            for (std::size_t j = 0; j < k; ++j) {
                if (p_.rows[hv] & bit(p_.order[j])) cand &= g.rows[image[p_.order[j]]];
            }
            for (; cand; cand &= cand - 1) {
                const unsigned gv = low(cand);
                if (g.deg(gv) < p_.degs[hv]) continue;
                image[hv] = gv;
                if (self(self, k + 1, used | bit(gv))) return true;
            }
            return false;
        };
        return place(place, 0, 0);
    }

    const Pattern& p_;
    std::set<CanonicalForm> dead_;
};

std::optional<std::pair<std::size_t, std::size_t>> complete_bipartite_sides(const Graph& h) {
    if (h.order() < 2 || !h.is_connected()) return std::nullopt;
    std::vector<int> side(h.order(), -1);
    side[0] = 0;
    std::vector<Vertex> stack{0};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : h.neighbors(v)) {
            if (side[w] < 0) {
                side[w] = 1 - side[v];
                stack.push_back(w);
            } else if (side[w] == side[v]) {
                return std::nullopt;
            }
        }
    }
    const auto s = static_cast<std::size_t>(std::count(side.begin(), side.end(), 0));
    const std::size_t t = h.order() - s;
    if (h.size() != s * t) return std::nullopt;
    return std::pair{std::min(s, t), std::max(s, t)};
}

class BipartiteMinor {
public:
    bool run(const MaskGraph& g, std::size_t s, std::size_t t) {
        if (s > t) std::swap(s, t);
        if (s == 0) return g.order() >= t;
        if (g.order() < s + t) return false;
        auto key = std::tuple(g.alive, s, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool found = false;
        if (s == 1) {
            found = boundary_search(g, static_cast<unsigned>(t)) >= t;
        } else {
            unsigned universal = 64;
            const unsigned n = g.order();
            for (Mask a = g.alive; a; a &= a - 1) {
                if (g.deg(low(a)) + 1 == n) {
                    universal = low(a);
                    break;
                }
            }
            if (universal < 64) {
                MaskGraph rest = g;
                rest.remove(universal);
                found = run(rest, s - 1, t) || run(rest, s, t - 1);
            } else {
                auto& pat = patterns_.try_emplace(std::pair(s, t), complete_bipartite(s, t)).first->second;
                GenericMinor search(pat);
                found = search.run(g);
            }
        }
        memo_[key] = found;
        return found;
    }

private:
    std::map<std::tuple<Mask, std::size_t, std::size_t>, bool> memo_;
    std::map<std::pair<std::size_t, std::size_t>, Pattern> patterns_;
};

void check_envelope(const Graph& g, const Graph& h) {
    if (g.order() > minor_max_host) {
        throw ScaleRefusal("minor test refused: host order " + std::to_string(g.order()) + " > " +
                           std::to_string(minor_max_host));
    }
    if (h.order() > minor_max_pattern) {
        throw ScaleRefusal("minor test refused: pattern order " + std::to_string(h.order()) + " > " +
                           std::to_string(minor_max_pattern));
    }
}

} // namespace

bool has_minor(const Graph& g, const Graph& h, const MinorOptions& opts) {
    check_envelope(g, h);
    if (h.order() > g.order() || h.size() > g.size()) return false;
    if (h.size() == 0) return g.order() >= h.order();
    MaskGraph mg = MaskGraph::from(g);
    if (opts.shortcuts) {
        if (auto st = complete_bipartite_sides(h)) {
            BipartiteMinor search;
            return search.run(mg, st->first, st->second);
        }
    }
    Pattern p(h);
    GenericMinor search(p);
    return search.run(mg);
}

std::size_t max_connected_boundary(const Graph& g) {
    if (g.order() > 64) throw ScaleRefusal("connected-set search limited to 64 vertices");
    return boundary_search(MaskGraph::from(g), static_cast<unsigned>(g.order()) + 1);
}

bool is_planar(const Graph& g) {
    using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BG bg(g.order());
    for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

bool is_planar_wagner(const Graph& g) {
    return !has_minor(g, complete_graph(5)) && !has_minor(g, complete_bipartite(3, 3));
}

std::vector<RankedGraph> spex_bruteforce(std::size_t n) {
    if (n > 7) throw ScaleRefusal("planar brute force refused for n = " + std::to_string(n) + " > 7");
    if (n == 0) return {};
    // Planarity is closed under edge deletion, so growing planar graphs one
    // edge at a time reaches every planar isomorphism class.
    std::set<CanonicalForm> seen;
    std::vector<Graph> all{empty_graph(n)};
    seen.insert(canonical_form(all[0]));
    std::vector<Graph> frontier = all;
    while (!frontier.empty()) {
        std::vector<Graph> next;
        for (const Graph& g : frontier) {
            for (Vertex u = 0; u < n; ++u) {
                for (Vertex v = u + 1; v < n; ++v) {
                    if (g.has_edge(u, v)) continue;
                    const Edge e(u, v);
                    Graph h = g.plus_edges(std::span(&e, 1));
                    if (!is_planar(h)) continue;
                    Graph c = canonical_graph(h);
                    if (seen.insert(canonical_form(c)).second) next.push_back(std::move(c));
                }
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::vector<std::pair<RankedGraph, CanonicalForm>> ranked;
    SpectralOptions opts;
    opts.tol = 1e-13;
    for (Graph& g : all) {
        const double rho = spectral_radius(g, opts).rho;
        CanonicalForm f = canonical_form(g);
        ranked.push_back({{std::move(g), rho}, std::move(f)});
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first.rho != b.first.rho) return a.first.rho > b.first.rho;
        return a.second < b.second;
    });
    std::vector<RankedGraph> out;
    out.reserve(ranked.size());
    for (auto& r : ranked) out.push_back(std::move(r.first));
    return out;
}

StructureReport structure_report(const Graph& h, const std::vector<Vertex>& path) {
    const std::size_t n = h.order();
    if (path.size() != n) throw PreconditionError("path does not span the graph");
    std::vector<char> seen(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (path[k] >= n || seen[path[k]]) throw PreconditionError("path is not a permutation of the vertices");
        seen[path[k]] = 1;
        if (k + 1 < n && !h.has_edge(path[k], path[k + 1])) {
            throw PreconditionError("missing path edge {" + std::to_string(path[k]) + "," +
                                    std::to_string(path[k + 1]) + "}");
        }
    }
    StructureReport rep;
    if (n == 0) return rep;
    rep.endpoint_degrees = {h.degree(path.front()), h.degree(path.back())};
    auto fork = [&](std::size_t k) { return h.degree(path[k]) >= 3; };
    std::vector<std::size_t> forks;
    for (std::size_t k = 0; k < n; ++k) {
        if (fork(k)) forks.push_back(k);
    }
    rep.fork_count = forks.size();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (h.degree(path[k]) != 2 || forks.empty()) continue;
        const bool internal = forks.front() < k && forks.back() > k;
        if (internal && !h.has_edge(path[k - 1], path[k + 1])) rep.contractible_2vertices.push_back(path[k]);
    }
    for (std::size_t k : forks) {
        const bool left = k > 0 && fork(k - 1);
        const bool right = k + 1 < n && fork(k + 1);
        if (!left && !right) rep.separate_forks.push_back(path[k]);
    }
    return rep;
}

SwitchResult contract_switch(const Graph& g, const SpanningPathWitness& witness, std::size_t i, std::size_t j) {
    witness.validate(g);
    const auto& p = witness.path_order;
    const std::size_t m = p.size(); // n - 2
    if (i < 2 || j + 1 > m || j < i + 3) {
        throw PreconditionError("switch needs 2 <= i, j <= n-3 and j - i >= 3 (i = " + std::to_string(i) +
                                ", j = " + std::to_string(j) + ")");
    }
    auto u = [&](std::size_t k) { return p[k - 1]; };
    auto dh = [&](std::size_t k) { return static_cast<long long>(g.degree(u(k))) - 2; };
    for (std::size_t k = i + 1; k < j; ++k) {
        if (dh(k) != 2) throw PreconditionError("u_" + std::to_string(k) + " is not a 2-vertex of the inner graph");
    }
    if (g.has_edge(u(i), u(j)) || g.has_edge(u(i + 1), u(m))) {
        throw PreconditionError("switch would create a repeated edge");
    }

    SwitchResult out;
    out.w2_predicted = 2 * dh(m) - 2 * dh(j - 1) + 2;
    out.w3_predicted = 2 * (dh(i) - 2) * (dh(j) - 2) + 2 * (dh(m - 1) - 2);

    const std::vector<Edge> del{Edge(u(i), u(i + 1)), Edge(u(j - 1), u(j))};
    const std::vector<Edge> add{Edge(u(i), u(j)), Edge(u(i + 1), u(m))};
    out.graph = g.minus_edges(del).plus_edges(add);
    out.witness.dominating = witness.dominating;
    auto& q = out.witness.path_order;
    for (std::size_t k = 1; k <= i; ++k) q.push_back(u(k));
    for (std::size_t k = j; k <= m; ++k) q.push_back(u(k));
    for (std::size_t k = i + 1; k < j; ++k) q.push_back(u(k));
    out.witness.validate(out.graph);

    const auto before = walk_counts(g.induced(p), 3);
    const auto after = walk_counts(out.graph.induced(p), 3);
    out.w2_delta = after.exact[1] - before.exact[1];
    out.w3_delta = after.exact[2] - before.exact[2];
    return out;
}

namespace {

// Hamiltonian path in h starting at `from` (if set) and ending at `to` (if set).
bool hamiltonian_path(const Graph& h, std::optional<Vertex> from, std::optional<Vertex> to) {
    const std::size_t n = h.order();
    if (n > 20) throw ScaleRefusal("Hamiltonian path check limited to 20 vertices");
    if (n == 0) return false;
    const std::size_t full = (std::size_t{1} << n) - 1;
    // reach[mask] = set of end vertices of paths covering mask
    std::vector<std::uint32_t> reach(full + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (!from || *from == v) reach[std::size_t{1} << v] |= 1U << v;
    }
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::uint32_t ends = reach[mask];
        if (!ends) continue;
        for (Vertex v = 0; v < n; ++v) {
            if (!(ends >> v & 1U)) continue;
            for (Vertex w : h.neighbors(v)) {
                if (mask >> w & 1U) continue;
                reach[mask | (std::size_t{1} << w)] |= 1U << w;
            }
        }
    }
    if (to) return reach[full] >> *to & 1U;
    return reach[full] != 0;
}

} // namespace

RebalanceResult rebalance_check(const Graph& h0, Vertex u, Vertex v, std::size_t a, std::size_t b) {
    if (a < b + 2) throw PreconditionError("rebalancing needs a >= b + 2");
    if (u == v || u >= h0.order() || v >= h0.order()) throw PreconditionError("invalid attachment vertices");
    if (h0.min_degree() < 2) throw PreconditionError("H0 needs minimum degree 2");
    const bool ok = b > 0 ? hamiltonian_path(h0, u, v) : hamiltonian_path(h0, u, std::nullopt);
    if (!ok) throw PreconditionError("H0(a,b) has no spanning path");

    SpectralOptions opts;
    opts.tol = 1e-13;
    const Graph k2 = complete_graph(2);
    RebalanceResult r;
    r.rho_ab = spectral_radius(join(k2, attach_paths(h0, u, v, a, b)), opts).rho;
    r.rho_shifted = spectral_radius(join(k2, attach_paths(h0, u, v, a - 1, b + 1)), opts).rho;
    r.gap = r.rho_shifted - r.rho_ab;
    r.increased = r.gap > 0;
    return r;
}

namespace {

// Spectral radius of K2 join H for H = path 0..m-1 plus chords. The two
// dominating vertices share one Perron entry.
class JoinRho {
public:
    explicit JoinRho(std::size_t m) : m_(m), adj_(m), x_(m), y_(m) {}

    double operator()(const std::vector<Edge>& chords) {
        for (std::size_t v = 0; v < m_; ++v) {
            adj_[v].clear();
            if (v > 0) adj_[v].push_back(static_cast<Vertex>(v - 1));
            if (v + 1 < m_) adj_[v].push_back(static_cast<Vertex>(v + 1));
        }
        for (const Edge& e : chords) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        std::fill(x_.begin(), x_.end(), 1.0);
        double d = 1.0;     // dominating entry
        const double c = 4.0;
        double rq = 0.0, prev = -1.0;
        for (int it = 0; it < 400; ++it) {
            double s = 0;
            for (double xv : x_) s += xv;
            const double ad = d + s;
            double num = 2 * d * ad, den = 2 * d * d, top = ad + c * d;
            for (std::size_t v = 0; v < m_; ++v) {
                double acc = 2 * d;
                for (Vertex w : adj_[v]) acc += x_[w];
                y_[v] = acc;
                num += x_[v] * acc;
                den += x_[v] * x_[v];
                top = std::max(top, acc + c * x_[v]);
            }
            rq = num / den;
            if (std::abs(rq - prev) <= 1e-15 * rq) break;
            prev = rq;
            for (std::size_t v = 0; v < m_; ++v) x_[v] = (y_[v] + c * x_[v]) / top;
            d = (ad + c * d) / top;
        }
        return rq;
    }

private:
    std::size_t m_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<double> x_, y_;
};

Graph path_plus(std::size_t m, const std::vector<Edge>& chords) {
    std::vector<Edge> e;
    for (std::size_t v = 0; v + 1 < m; ++v) e.emplace_back(Vertex(v), Vertex(v + 1));
    e.insert(e.end(), chords.begin(), chords.end());
    return Graph::from_edges(m, std::move(e));
}

} // namespace

SweepResult candidate_sweep(std::size_t n, std::size_t gamma, const SweepOptions& opts) {
    if (gamma == 0) throw PreconditionError("sweep needs gamma >= 1");
    if (n < 2 * gamma + 6) throw PreconditionError("sweep order too small");
    if (n > minor_max_host) throw ScaleRefusal("sweep limited to n <= " + std::to_string(minor_max_host));
    const std::size_t m = n - 2;
    const std::size_t chords_needed = 3 * gamma;
    const std::size_t max_deg = 2 * gamma + 2;

    SweepResult res;
    res.n = n;
    res.gamma = gamma;

    std::vector<Edge> nonedges;
    for (Vertex i = 0; i < m; ++i) {
        for (Vertex j = i + 2; j < m; ++j) nonedges.emplace_back(i, j);
    }

    using Entry = std::pair<double, std::vector<Edge>>;
    auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> top(cmp);
    JoinRho rho_of(m);

    std::vector<unsigned> deg(m, 2);
    deg[0] = deg[m - 1] = 1;
    std::vector<Edge> chosen;

    auto consider = [&]() {
        ++res.chord_sets;
        std::vector<Edge> mirror;
        for (const Edge& e : chosen) mirror.emplace_back(Vertex(m - 1 - e.v), Vertex(m - 1 - e.u));
        std::sort(mirror.begin(), mirror.end());
        if (mirror < chosen) return;
        ++res.ranked;
        const double r = rho_of(chosen);
        if (top.size() < opts.keep) {
            top.emplace(r, chosen);
        } else if (r > top.top().first) {
            top.pop();
            top.emplace(r, chosen);
        }
    };

    // Chords from `pool` in increasing index order, pruning on degree.
    auto choose = [&](auto&& self, const std::vector<Edge>& pool, std::size_t from) -> void {
        if (chosen.size() == chords_needed) {
            consider();
            return;
        }
        for (std::size_t k = from; k + (chords_needed - chosen.size()) <= pool.size(); ++k) {
            const Edge e = pool[k];
            if (deg[e.u] + 1 > max_deg || deg[e.v] + 1 > max_deg) continue;
            ++deg[e.u];
            ++deg[e.v];
            chosen.push_back(e);
            self(self, pool, k + 1);
            chosen.pop_back();
            --deg[e.u];
            --deg[e.v];
        }
    };

    if (opts.window == 0) {
        choose(choose, nonedges, 0);
    } else {
        for (Vertex start = 0; start < m; ++start) {
            std::vector<Edge> pool;
            for (const Edge& e : nonedges) {
                if (e.u >= start && e.v < start + opts.window) pool.push_back(e);
            }
            // The first chord fixes the window start.
            for (std::size_t k = 0; k < pool.size() && pool[k].u == start; ++k) {
                const Edge e = pool[k];
                if (deg[e.u] + 1 > max_deg || deg[e.v] + 1 > max_deg) continue;
                ++deg[e.u];
                ++deg[e.v];
                chosen.push_back(e);
                choose(choose, pool, k + 1);
                chosen.pop_back();
                --deg[e.u];
                --deg[e.v];
            }
        }
    }
    std::vector<Entry> ranked;
    while (!top.empty()) {
        ranked.push_back(top.top());
        top.pop();
    }
    SpectralOptions sopt;
    sopt.tol = 1e-13;
    const Graph k2 = complete_graph(2);
    std::vector<std::tuple<double, CanonicalForm, SweepCandidate>> exact;
    std::set<CanonicalForm> forms;
    for (auto& [r, chords] : ranked) {
        Graph inner = path_plus(m, chords);
        CanonicalForm f = canonical_form(inner);
        if (!forms.insert(f).second) continue;
        const double rho = spectral_radius(join(k2, inner), sopt).rho;
        exact.emplace_back(rho, std::move(f), SweepCandidate{std::move(inner), chords, rho, false});
    }
    std::sort(exact.begin(), exact.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });

    const Graph forbidden = complete_bipartite(3, 2 * gamma + 3);
    const Graph target = kr_pendant(gamma + 3, m).graph;
    for (auto& entry : exact) {
        SweepCandidate& c = std::get<2>(entry);
        const Graph g = join(k2, c.inner);
        ++res.minor_tests;
        c.minor_free = !has_minor(g, forbidden);
        if (!c.minor_free) {
            if (!res.best) res.rejected.push_back(c);
            continue;
        }
        c.embeddable = find_triangulation(g).has_value();
        if (!res.best) {
            res.best_is_pendant_clique = isomorphic(c.inner, target);
            res.best = c;
        }
        if (!c.embeddable) {
            ++res.not_embeddable;
            continue;
        }
        res.embedded_is_pendant_clique = isomorphic(c.inner, target);
        res.embedded = std::move(c);
        break;
    }
    return res;
}

} // namespace surfex
