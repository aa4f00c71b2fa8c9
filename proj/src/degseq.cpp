#include "surfex/degseq.hpp"

#include <algorithm>
#include <numeric>
#include <limits>
#include <random>

#include "surfex/error.hpp"

namespace surfex {

using Realizations = W3SearchOptions::Realizations;

bool is_graphical(const DegreeSequence& pi) {
    const auto& d = pi.values();
    const std::size_t n = d.size();
    if (pi.sum() % 2) return false;
    if (n > 0 && d[0] >= n) return false;
    std::size_t left = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        left += d[k - 1];
        std::size_t right = k * (k - 1);
        for (std::size_t i = k; i < n; ++i) right += std::min(d[i], k);
        if (left > right) return false;
    }
    return true;
}

Graph havel_hakimi(const DegreeSequence& pi) {
    if (!is_graphical(pi)) throw PreconditionError("degree sequence " + pi.to_string() + " is not graphical");
    const std::size_t n = pi.length();
    std::vector<std::size_t> rem(pi.values());
    std::vector<Vertex> order(n);
    GraphBuilder b(n);
    for (;;) {
        std::iota(order.begin(), order.end(), Vertex{0});
        std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return rem[x] > rem[y]; });
        if (n == 0) break;
        const Vertex v = order[0];
        const std::size_t k = rem[v];
        if (k == 0) break;
        rem[v] = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            --rem[order[i]];
            b.add_edge(v, order[i]);
        }
    }
    return std::move(b).build();
}

std::uint64_t w3_of(const Graph& h) {
    std::uint64_t s = 0;
    for (const Edge& e : h.edges()) s += 2 * std::uint64_t(h.degree(e.u)) * h.degree(e.v);
    return s;
}

namespace {

const char* describe(Realizations r) {
    switch (r) {
    case Realizations::connected: return "connected ";
    case Realizations::no_isolated_edge: return "isolated-edge-free ";
    default: return "";
    }
}

class SwapClimber {
public:
    SwapClimber(const Graph& start, Realizations mode)
        : n_(start.order()), mode_(mode), adj_(n_ * n_, 0), deg_(n_) {
        for (Vertex v = 0; v < n_; ++v) deg_[v] = start.degree(v);
        for (const Edge& e : start.edges()) add(e.u, e.v);
    }

    // Number of constraint violations; 0 means admissible.
    std::size_t defects() const {
        switch (mode_) {
        case Realizations::connected: return components() - (n_ > 0);
        case Realizations::no_isolated_edge: {
            std::size_t k = 0;
            for (auto [a, b] : edges_) k += deg_[a] == 1 && deg_[b] == 1;
            return k;
        }
        default: return 0;
        }
    }

    // Random swaps that never increase the defect count, so a start that
    // violates the constraint drifts towards an admissible one.
    void shuffle(std::mt19937_64& rng, std::size_t attempts) {
        std::size_t bad = defects();
        for (std::size_t t = 0; t < attempts && edges_.size() >= 2; ++t) {
            std::uniform_int_distribution<std::size_t> pick(0, edges_.size() - 1);
            const std::size_t x = pick(rng), y = pick(rng);
            if (x == y) continue;
            auto [a, b] = edges_[x];
            auto [c, d] = edges_[y];
            if (rng() & 1) std::swap(c, d);
            const auto ox = edges_[x], oy = edges_[y];
            if (!apply(x, y, a, b, c, d)) continue;
            const std::size_t now = defects();
            if (now > bad) {
                undo(x, y, ox, oy);
            } else {
                bad = now;
            }
        }
    }

    // Best-improvement double-edge swaps until none raises w3.
    void climb() {
        struct Move {
            long delta;
            std::size_t x, y;
            bool flip;
        };
        std::vector<Move> moves;
        for (;;) {
            moves.clear();
            for (std::size_t x = 0; x < edges_.size(); ++x) {
                for (std::size_t y = x + 1; y < edges_.size(); ++y) {
                    for (int f = 0; f < 2; ++f) {
                        auto [a, b] = edges_[x];
                        auto [c, d] = edges_[y];
                        if (f) std::swap(c, d);
                        // ab, cd -> ac, bd
                        if (a == c || a == d || b == c || b == d) continue;
                        if (adj_[a * n_ + c] || adj_[b * n_ + d]) continue;
                        const long delta = 2 * (long(deg_[a]) - long(deg_[d])) * (long(deg_[c]) - long(deg_[b]));
                        if (delta > 0) moves.push_back({delta, x, y, f != 0});
                    }
                }
            }
            std::stable_sort(moves.begin(), moves.end(),
                             [](const Move& p, const Move& q) { return p.delta > q.delta; });
            bool moved = false;
            for (const Move& m : moves) {
                const auto ox = edges_[m.x], oy = edges_[m.y];
                auto [a, b] = ox;
                auto [c, d] = oy;
                if (m.flip) std::swap(c, d);
                apply(m.x, m.y, a, b, c, d);
                if (defects() == 0) {
                    moved = true;
                    break;
                }
                undo(m.x, m.y, ox, oy);
            }
            if (!moved) return;
        }
    }

    Graph graph() const {
        std::vector<Edge> e;
        for (auto [a, b] : edges_) e.emplace_back(a, b);
        return Graph::from_edges(n_, std::move(e));
    }

private:
    void add(Vertex a, Vertex b) {
        adj_[a * n_ + b] = adj_[b * n_ + a] = 1;
        edges_.emplace_back(a, b);
    }

    // Replaces edges x = ab and y = cd by ac and bd.
    bool apply(std::size_t x, std::size_t y, Vertex a, Vertex b, Vertex c, Vertex d) {
        if (a == c || a == d || b == c || b == d) return false;
        if (adj_[a * n_ + c] || adj_[b * n_ + d]) return false;
        adj_[a * n_ + b] = adj_[b * n_ + a] = 0;
        adj_[c * n_ + d] = adj_[d * n_ + c] = 0;
        adj_[a * n_ + c] = adj_[c * n_ + a] = 1;
        adj_[b * n_ + d] = adj_[d * n_ + b] = 1;
        edges_[x] = {a, c};
        edges_[y] = {b, d};
        return true;
    }

    void undo(std::size_t x, std::size_t y, std::pair<Vertex, Vertex> ox, std::pair<Vertex, Vertex> oy) {
        for (std::size_t i : {x, y}) adj_[edges_[i].first * n_ + edges_[i].second] = adj_[edges_[i].second * n_ + edges_[i].first] = 0;
        edges_[x] = ox;
        edges_[y] = oy;
        for (std::size_t i : {x, y}) adj_[edges_[i].first * n_ + edges_[i].second] = adj_[edges_[i].second * n_ + edges_[i].first] = 1;
    }

    std::size_t components() const {
        std::vector<char> seen(n_, 0);
        std::vector<Vertex> stack;
        std::size_t parts = 0;
        for (Vertex s = 0; s < n_; ++s) {
            if (seen[s]) continue;
            ++parts;
            seen[s] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                Vertex u = stack.back();
                stack.pop_back();
                for (Vertex w = 0; w < n_; ++w) {
                    if (adj_[u * n_ + w] && !seen[w]) {
                        seen[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
        }
        return parts;
    }

    std::size_t n_;
    Realizations mode_;
    std::vector<char> adj_;
    std::vector<std::size_t> deg_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
};

W3SearchResult local_search(const DegreeSequence& pi, const W3SearchOptions& opts) {
    const Graph start = havel_hakimi(pi);
    W3SearchResult r;
    bool have = false;
    std::vector<Edge> best_edges;
    const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
    for (std::size_t k = 0; k < restarts; ++k) {
        SwapClimber sc(start, opts.realizations);
        std::mt19937_64 rng(opts.seed + k);
        if (k > 0 || sc.defects() > 0) sc.shuffle(rng, 20 * start.size() + 20);
        if (sc.defects() > 0) continue;
        sc.climb();
        Graph g = sc.graph();
        const std::uint64_t w = w3_of(g);
        auto e = g.edges();
        if (!have || w > r.w3 || (w == r.w3 && e < best_edges)) {
            have = true;
            r.w3 = w;
            r.witness = std::move(g);
            best_edges = std::move(e);
        }
    }
    r.restarts_run = restarts;
    if (!have) {
        throw PreconditionError(std::string("local search reached no ") + describe(opts.realizations) +
                                "realization of " + pi.to_string());
    }
    return r;
}

// Vertices of degree != 2 ("special") are joined either by direct edges or
// by chains of 2-vertices. A chain s..t with k interior vertices adds
// 4(d_s + d_t) + 8(k - 1) to w3, and every 2-vertex not needed by a chain
// can sit in a chain or a cycle for +8. Scores below are taken relative to
// 8 per 2-vertex.
class ChainEnumerator {
public:
    struct Unit {
        bool chain;
        std::size_t i, j;
    };

    ChainEnumerator(std::vector<std::size_t> deg, std::size_t twos, Realizations mode, long floor)
        : d_(std::move(deg)), k_(d_.size()), twos_(twos), mode_(mode), floor_(floor), rem_(d_),
          direct_(k_ * k_, 0) {
        stub_bound_.resize(k_);
        for (std::size_t i = 0; i < k_; ++i) {
            long b = 4 * long(d_[i]) - 4;
            for (std::size_t j = 0; j < k_; ++j) {
                b = std::max(b, long(d_[i] * d_[j]));
                b = std::max(b, 2 * long(d_[i] + d_[j]) - 4);
            }
            stub_bound_[i] = b;
        }
    }

    bool run() {
        recurse(0, 0, 0);
        return found_;
    }

    std::uint64_t best_w3() const { return std::uint64_t(best_ + 8 * long(twos_)); }
    const std::vector<Unit>& best_units() const { return best_units_; }

private:
    long value(const Unit& u) const {
        if (!u.chain) return 2 * long(d_[u.i] * d_[u.j]);
        if (u.i == u.j) return 8 * long(d_[u.i]) - 8;
        return 4 * long(d_[u.i] + d_[u.j]) - 8;
    }
    static std::size_t interior(const Unit& u) { return u.chain ? (u.i == u.j ? 2 : 1) : 0; }

    bool spans() const {
        std::vector<std::size_t> root(k_);
        std::iota(root.begin(), root.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        std::size_t parts = k_;
        for (const auto& u : units_) {
            auto a = find(u.i), b = find(u.j);
            if (a != b) {
                root[a] = b;
                --parts;
            }
        }
        return parts == 1;
    }

    // Choices at vertex i are made in non-decreasing (j, type) order.
    void recurse(std::size_t i, std::size_t min_code, long score) {
        while (i < k_ && rem_[i] == 0) {
            ++i;
            min_code = 0;
        }
        const long need = found_ ? best_ + 1 : floor_;
        if (i == k_) {
            const std::size_t leftover = twos_ - used_;
            const bool connected = mode_ == Realizations::connected;
            if (leftover > 0 && chains_ == 0 && (connected || leftover < 3)) return;
            if (connected && !spans()) return;
            if (score >= need) {
                found_ = true;
                best_ = score;
                best_units_ = units_;
            }
            return;
        }
        long bound = score;
        for (std::size_t v = i; v < k_; ++v) bound += long(rem_[v]) * stub_bound_[v];
        if (bound < need) return;

        // code = 2 * j + (chain ? 1 : 0)
        for (std::size_t code = std::max(min_code, 2 * i); code < 2 * k_; ++code) {
            const std::size_t j = code / 2;
            const Unit u{(code & 1) != 0, i, j};
            if (!u.chain) {
                if (j == i || direct_[i * k_ + j] || rem_[j] == 0) continue;
                if (mode_ == Realizations::no_isolated_edge && d_[i] == 1 && d_[j] == 1) continue;
            } else if (j == i ? rem_[i] < 2 : rem_[j] == 0) {
                continue;
            }
            if (used_ + interior(u) > twos_) continue;

            --rem_[i];
            --rem_[j];
            if (!u.chain) direct_[i * k_ + j] = 1;
            used_ += interior(u);
            chains_ += u.chain;
            units_.push_back(u);
            // a direct edge to j cannot repeat, so the next code must be larger
            recurse(i, u.chain ? code : code + 1, score + value(u));
            units_.pop_back();
            chains_ -= u.chain;
            used_ -= interior(u);
            if (!u.chain) direct_[i * k_ + j] = 0;
            ++rem_[i];
            ++rem_[j];
        }
    }

    std::vector<std::size_t> d_;
    std::size_t k_;
    std::size_t twos_;
    Realizations mode_;
    long floor_;
    std::vector<std::size_t> rem_;
    std::vector<char> direct_;
    std::vector<long> stub_bound_;
    std::size_t used_ = 0;
    std::size_t chains_ = 0;
    std::vector<Unit> units_;
    bool found_ = false;
    long best_ = 0;
    std::vector<Unit> best_units_;
};

W3SearchResult exhaustive_search(const DegreeSequence& pi, const W3SearchOptions& opts) {
    const auto& d = pi.values();
    std::vector<Vertex> special, twos;
    std::vector<std::size_t> sd;
    for (Vertex v = 0; v < d.size(); ++v) {
        if (d[v] == 2) {
            twos.push_back(v);
        } else {
            special.push_back(v);
            sd.push_back(d[v]);
        }
    }
    W3SearchResult r;
    r.exhaustive = true;
    if (special.empty()) {
        // all degrees 2: one cycle through every vertex is as good as any
        if (!twos.empty() && twos.size() < 3) throw PreconditionError("no simple graph is 2-regular on under 3 vertices");
        GraphBuilder b(d.size());
        for (std::size_t i = 0; i < twos.size(); ++i) b.add_edge(twos[i], twos[(i + 1) % twos.size()]);
        r.witness = std::move(b).build();
        r.w3 = w3_of(r.witness);
        return r;
    }

    long floor = std::numeric_limits<long>::min();
    try {
        floor = long(local_search(pi, opts).w3) - 8 * long(twos.size());
    } catch (const PreconditionError&) {
        // no admissible start reached; enumerate without a floor
    }
    ChainEnumerator en(sd, twos.size(), opts.realizations, floor);
    if (!en.run()) {
        throw PreconditionError("degree sequence " + pi.to_string() + " has no " + describe(opts.realizations) +
                                "realization");
    }

    // Lay out the optimal structure; surplus 2-vertices lengthen the first
    // chain or close into a cycle.
    GraphBuilder b(d.size());
    std::size_t next = 0;
    std::vector<std::vector<Vertex>> chains;
    for (const auto& u : en.best_units()) {
        const Vertex s = special[u.i], t = special[u.j];
        if (!u.chain) {
            b.add_edge(s, t);
            continue;
        }
        chains.push_back({s});
        for (std::size_t c = 0; c < (u.i == u.j ? 2u : 1u); ++c) chains.back().push_back(twos[next++]);
        chains.back().push_back(t);
    }
    std::vector<Vertex> surplus(twos.begin() + next, twos.end());
    if (!chains.empty()) {
        chains[0].insert(chains[0].end() - 1, surplus.begin(), surplus.end());
    } else {
        for (std::size_t i = 0; i < surplus.size(); ++i) b.add_edge(surplus[i], surplus[(i + 1) % surplus.size()]);
    }
    for (const auto& c : chains)
        for (std::size_t i = 0; i + 1 < c.size(); ++i) b.add_edge(c[i], c[i + 1]);

    r.witness = std::move(b).build();
    r.w3 = w3_of(r.witness);
    if (r.w3 != en.best_w3()) throw PreconditionError("internal: chain layout disagrees with its score");
    return r;
}

} // namespace

W3SearchResult max_w3_degseq(const DegreeSequence& pi, const W3SearchOptions& opts) {
    if (!is_graphical(pi)) throw PreconditionError("degree sequence " + pi.to_string() + " is not graphical");
    const auto& d = pi.values();
    const std::size_t special = std::count_if(d.begin(), d.end(), [](std::size_t x) { return x != 2; });
    using S = W3SearchOptions::Strategy;
    S s = opts.strategy;
    if (s == S::automatic) s = special <= opts.max_exhaustive_special ? S::exhaustive : S::local_search;
    if (s == S::exhaustive) {
        if (special > opts.max_exhaustive_special) {
            throw ScaleRefusal("exhaustive w3 search refused: " + std::to_string(special) +
                               " vertices of degree other than 2");
        }
        return exhaustive_search(pi, opts);
    }
    return local_search(pi, opts);
}

W3Case w3_case(int which, std::size_t n) {
    static const std::vector<std::vector<std::size_t>> heads{
        {4, 4, 3, 3}, {5, 5, 4, 4, 4}, {5, 5, 5, 3, 3, 3}, {6, 4, 4, 4, 3, 3}};
    static const std::uint64_t offsets[] = {106, 346, 340, 332};
    if (which < 1 || which > 4) throw PreconditionError("w3 case must be 1..4");
    std::vector<std::size_t> d = heads[static_cast<std::size_t>(which - 1)];
    if (n < d.size() + 4) throw PreconditionError("w3 case " + std::to_string(which) + " needs n >= " + std::to_string(d.size() + 4));
    d.resize(n - 4, 2);
    d.push_back(1);
    d.push_back(1);
    return {DegreeSequence(std::move(d)), 8 * n + offsets[which - 1]};
}

} // namespace surfex
