#include "surfex/canonical.hpp"

#include <algorithm>

#include "surfex/error.hpp"

namespace surfex {

namespace {

using Partition = std::vector<std::vector<Vertex>>;

class Canonizer {
public:
    explicit Canonizer(const Graph& g) : g_(g), n_(g.order()), cell_of_(n_) {}

    CanonicalLabeling run() {
        Partition p;
        if (n_ > 0) {
            p.emplace_back(n_);
            for (Vertex v = 0; v < n_; ++v) p[0][v] = v;
        }
        search(std::move(p));
        return {std::move(best_), std::move(best_pos_)};
    }

private:
    void refine(Partition& p) {
        std::vector<std::uint32_t> sig;
        for (;;) {
            const std::size_t cells = p.size();
            for (std::size_t c = 0; c < cells; ++c)
                for (Vertex v : p[c]) cell_of_[v] = static_cast<std::uint32_t>(c);
            sig.assign(n_ * cells, 0);
            for (Vertex v = 0; v < n_; ++v)
                for (Vertex w : g_.neighbors(v)) ++sig[v * cells + cell_of_[w]];

            Partition next;
            next.reserve(n_);
            for (auto& cell : p) {
                if (cell.size() == 1) {
                    next.push_back(std::move(cell));
                    continue;
                }
                auto less = [&](Vertex a, Vertex b) {
                    return std::lexicographical_compare(sig.begin() + a * cells, sig.begin() + (a + 1) * cells,
                                                        sig.begin() + b * cells, sig.begin() + (b + 1) * cells);
                };
                std::stable_sort(cell.begin(), cell.end(), less);
                std::size_t start = 0;
                for (std::size_t i = 1; i <= cell.size(); ++i) {
                    if (i == cell.size() || less(cell[i - 1], cell[i])) {
                        next.emplace_back(cell.begin() + start, cell.begin() + i);
                        start = i;
                    }
                }
            }
            const bool stable = next.size() == cells;
            p = std::move(next);
            if (stable) return;
        }
    }

    void search(Partition p) {
        refine(p);
        auto target = std::find_if(p.begin(), p.end(), [](const auto& c) { return c.size() > 1; });
        if (target == p.end()) {
            leaf(p);
            return;
        }
        const std::size_t t = target - p.begin();
        const std::vector<Vertex> members = p[t];
        for (Vertex v : members) {
            Partition child;
            child.reserve(p.size() + 1);
            child.insert(child.end(), p.begin(), p.begin() + t);
            child.push_back({v});
            std::vector<Vertex> rest;
            for (Vertex w : members)
                if (w != v) rest.push_back(w);
            child.push_back(std::move(rest));
            child.insert(child.end(), p.begin() + t + 1, p.end());
            search(std::move(child));
        }
    }

    void leaf(const Partition& p) {
        std::vector<Vertex> pos(n_);
        for (std::size_t c = 0; c < p.size(); ++c) pos[p[c][0]] = static_cast<Vertex>(c);
        const std::size_t total = n_ * (n_ - (n_ > 0)) / 2;
        CanonicalForm f{n_, std::vector<std::uint64_t>((total + 63) / 64, 0)};
        for (Vertex u = 0; u < n_; ++u) {
            for (Vertex w : g_.neighbors(u)) {
                std::size_t i = pos[u], j = pos[w];
                if (i >= j) continue;
                std::size_t k = j * (j - 1) / 2 + i;
                f.bits[k / 64] |= std::uint64_t{1} << (63 - k % 64);
            }
        }
        if (!found_ || f < best_) {
            found_ = true;
            best_ = std::move(f);
            best_pos_ = std::move(pos);
        }
    }

    const Graph& g_;
    std::size_t n_;
    std::vector<std::uint32_t> cell_of_;
    bool found_ = false;
    CanonicalForm best_;
    std::vector<Vertex> best_pos_;
};

} // namespace

CanonicalLabeling canonical_labeling(const Graph& g) {
    if (g.order() > canonical_max_order) {
        throw ScaleRefusal("canonical form refused for order " + std::to_string(g.order()));
    }
    auto out = Canonizer(g).run();
    out.form.n = g.order();
    return out;
}

CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

Graph canonical_graph(const Graph& g) {
    auto lab = canonical_labeling(g);
    return g.relabeled(lab.position);
}

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.size() != b.size()) return false;
    if (a.degree_sequence() != b.degree_sequence()) return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace surfex
