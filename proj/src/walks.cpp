#include "surfex/walks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "surfex/error.hpp"

namespace surfex {

std::string WalkProfile::to_json() const {
    std::ostringstream out;
    out << '[';
    if (mode == Mode::exact) {
        for (std::size_t i = 0; i < exact.size(); ++i) out << (i ? "," : "") << '"' << exact[i] << '"';
    } else {
        out.precision(17);
        for (std::size_t i = 0; i < scaled.size(); ++i) out << (i ? "," : "") << scaled[i];
    }
    out << ']';
    return out.str();
}

WalkProfile walk_counts(const Graph& h, std::size_t L) {
    if (L == 0) throw PreconditionError("walk length must be at least 1");
    const std::size_t n = h.order();
    WalkProfile p;
    p.exact.reserve(L);
    std::vector<BigInt> cur(n, 1), next(n);
    for (std::size_t l = 1; l <= L; ++l) {
        BigInt total = 0;
        for (Vertex v = 0; v < n; ++v) {
            BigInt s = 0;
            for (Vertex w : h.neighbors(v)) s += cur[w];
            next[v] = std::move(s);
            total += next[v];
        }
        cur.swap(next);
        p.exact.push_back(std::move(total));
    }
    return p;
}

WalkProfile walk_counts_scaled(const Graph& h, std::size_t L, double scale) {
    if (L == 0) throw PreconditionError("walk length must be at least 1");
    if (!(scale > 0)) throw PreconditionError("scale must be positive");
    const std::size_t n = h.order();
    WalkProfile p;
    p.mode = WalkProfile::Mode::scaled;
    p.scale = scale;
    p.scaled.reserve(L);
    std::vector<double> cur(n, 1.0), next(n);
    for (std::size_t l = 1; l <= L; ++l) {
        long double total = 0;
        for (Vertex v = 0; v < n; ++v) {
            double s = 0;
            for (Vertex w : h.neighbors(v)) s += cur[w];
            next[v] = s / scale;
            total += next[v];
        }
        cur.swap(next);
        p.scaled.push_back(double(total));
    }
    return p;
}

BigInt w2_closed_form(const Graph& h) {
    BigInt s = 0;
    for (Vertex v = 0; v < h.order(); ++v) s += BigInt(h.degree(v)) * h.degree(v);
    return s;
}

BigInt w3_closed_form(const Graph& h) {
    BigInt s = 0;
    for (const Edge& e : h.edges()) s += 2 * BigInt(h.degree(e.u)) * h.degree(e.v);
    return s;
}

bool check_w2_w3(const Graph& h) {
    auto p = walk_counts(h, 3);
    return p.exact[0] == 2 * BigInt(h.size()) && p.exact[1] == w2_closed_form(h) &&
           p.exact[2] == w3_closed_form(h);
}

WalkComparison walk_compare(const Graph& h1, const Graph& h2, std::size_t Lmax) {
    if (h1.order() != h2.order()) throw PreconditionError("walk_compare needs graphs of equal order");
    if (Lmax == 0) throw PreconditionError("Lmax must be at least 1");
    const std::size_t n = h1.order();
    std::vector<BigInt> a(n, 1), b(n, 1), na(n), nb(n);
    for (std::size_t l = 1; l <= Lmax; ++l) {
        BigInt ta = 0, tb = 0;
        for (Vertex v = 0; v < n; ++v) {
            BigInt s = 0;
            for (Vertex w : h1.neighbors(v)) s += a[w];
            ta += s;
            na[v] = std::move(s);
            BigInt t = 0;
            for (Vertex w : h2.neighbors(v)) t += b[w];
            tb += t;
            nb[v] = std::move(t);
        }
        a.swap(na);
        b.swap(nb);
        if (ta != tb) return {false, false, l, ta > tb ? 1 : -1};
    }
    return {true, true, 0, 0};
}

namespace {

struct PartSeries {
    double n;
    const Graph* h;
    double delta;
};

// Sum_{l>=1} w^(l)(H)/rho^(l+1), truncated once the certified tail drops
// below `tail_tol` relative to the running sum.
double walk_series(const PartSeries& p, double rho, double tail_tol) {
    if (p.h->size() == 0) return 0.0;
    if (p.delta >= rho) {
        throw PreconditionError("walk series diverges: max degree " + std::to_string(p.delta) +
                                " >= rho candidate " + std::to_string(rho));
    }
    const std::size_t k = p.h->order();
    std::vector<double> v(k, 1.0), next(k);
    long double sum = 0;
    constexpr std::size_t max_terms = 1000000;
    for (std::size_t l = 1; l <= max_terms; ++l) {
        long double total = 0;
        for (Vertex u = 0; u < k; ++u) {
            double s = 0;
            for (Vertex w : p.h->neighbors(u)) s += v[w];
            next[u] = s / rho;
            total += next[u];
        }
        v.swap(next);
        // v = A^l 1 / rho^l, so this term is w^(l) / rho^(l+1)
        const long double term = total / rho;
        sum += term;
        const long double tail = term * p.delta / (rho - p.delta);
        if (tail <= tail_tol * (1 + sum)) return double(sum);
    }
    throw NonConvergence("walk series did not settle", double(sum));
}

double zhang_lhs(std::span<const PartSeries> parts, double rho) {
    long double s = 0;
    for (const auto& p : parts) s += 1.0L / (1.0L + p.n / rho + walk_series(p, rho, 1e-17));
    return double(s - (parts.size() - 1));
}

} // namespace

ZhangResult zhang_solve(std::span<const ZhangPart> parts, double tol) {
    if (parts.size() < 2) throw PreconditionError("zhang_rho needs at least two parts");
    if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
    std::vector<PartSeries> ps;
    double low = 0, high = 0;
    for (const auto& p : parts) {
        if (p.n == 0 || p.h.order() > p.n) throw PreconditionError("zhang part must satisfy 1 <= |H_i| <= n_i");
        const double delta = double(p.h.max_degree());
        ps.push_back({double(p.n), &p.h, delta});
        if (p.h.size() > 0) low = std::max(low, delta + 1);
        high += double(p.n);
    }
    if (low == 0) low = 1e-9 * high;
    if (low >= high) throw PreconditionError("zhang bracket is empty");

    if (zhang_lhs(ps, low) > 0) {
        throw PreconditionError("zhang bracket error: root lies below the low end " + std::to_string(low));
    }
    if (zhang_lhs(ps, high) < 0) {
        throw PreconditionError("zhang bracket error: no sign change up to " + std::to_string(high));
    }
    ZhangResult r;
    while (high - low > tol / 4 && r.bisections < 4000) {
        const double mid = low + (high - low) / 2;
        if (mid <= low || mid >= high) break;
        (zhang_lhs(ps, mid) < 0 ? low : high) = mid;
        ++r.bisections;
    }
    r.low = low;
    r.high = high;
    r.rho = low + (high - low) / 2;
    return r;
}

double zhang_rho(std::span<const ZhangPart> parts, double tol) { return zhang_solve(parts, tol).rho; }

} // namespace surfex
