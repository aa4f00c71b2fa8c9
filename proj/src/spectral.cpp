#include "surfex/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "surfex/error.hpp"

namespace surfex {

namespace {

// Rows longer than this are accumulated with compensation; the dominating
// vertices of K2 join H sum millions of nearly equal terms, where plain
// long double drifts by ~1e-9 at n ~ 1e7.
constexpr std::size_t long_row = 64;

// Neumaier summation in long double.
struct Sum {
    long double s = 0, c = 0;
    void add(long double v) {
        const long double t = s + v;
        if (std::fabs(s) >= std::fabs(v)) c += (s - t) + v;
        else c += (v - t) + s;
        s = t;
    }
    long double value() const { return s + c; }
};

SpectralResult power_iteration(const Graph& g, const SpectralOptions& opts) {
    const std::size_t n = g.order();
    SpectralResult res;
    if (g.size() == 0) {
        res.perron.assign(n, 1.0);
        return res;
    }

    double c = 1.0;
    if (opts.shift) {
        c = *opts.shift;
    } else {
        long double sq = 0;
        for (Vertex v = 0; v < n; ++v) sq += static_cast<long double>(g.degree(v)) * g.degree(v);
        double lb = std::max(2.0 * double(g.size()) / double(n), double(std::sqrt(sq / n)));
        c = std::max(1.0, lb / 2);
    }
    res.shift = c;

    std::vector<double> x(n, 1.0), ax(n);
    double lambda = 0.0, residual = 0.0;
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        Sum xax, xx;
        for (Vertex v = 0; v < n; ++v) {
            auto nb = g.neighbors(v);
            double s;
            if (nb.size() > long_row) {
                Sum acc;
                for (Vertex w : nb) acc.add(x[w]);
                s = double(acc.value());
            } else {
                s = 0;
                for (Vertex w : nb) s += x[w];
            }
            ax[v] = s;
            xax.add(static_cast<long double>(x[v]) * s);
            xx.add(static_cast<long double>(x[v]) * x[v]);
        }
        lambda = double(xax.value() / xx.value());
        residual = 0;
        double top = 0;
        for (Vertex v = 0; v < n; ++v) {
            residual = std::max(residual, std::abs(ax[v] - lambda * x[v]));
            top = std::max(top, ax[v] + c * x[v]);
        }
        res.iterations = it;
        if (residual <= opts.tol * std::max(1.0, lambda)) break;
        if (it == opts.max_iterations) {
            throw NonConvergence("power iteration hit the cap of " + std::to_string(it) +
                                     " iterations (residual " + std::to_string(residual) + ")",
                                 lambda);
        }
        for (Vertex v = 0; v < n; ++v) x[v] = (ax[v] + c * x[v]) / top;
    }
    // x has max entry 1 at every stage except the very first (all ones).
    res.rho = lambda;
    res.residual = residual;
    res.perron = std::move(x);
    return res;
}

} // namespace

SpectralResult spectral_radius(const Graph& g, const SpectralOptions& opts) {
    if (!(opts.tol > 0)) throw PreconditionError("tolerance must be positive");
    if (g.is_connected()) return power_iteration(g, opts);

    auto comp = g.components();
    const std::size_t k = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<Vertex>> members(k);
    for (Vertex v = 0; v < g.order(); ++v) members[comp[v]].push_back(v);

    SpectralResult best;
    std::vector<Vertex> best_members;
    bool have = false;
    std::size_t iterations = 0;
    for (const auto& m : members) {
        auto r = power_iteration(g.induced(m), opts);
        iterations += r.iterations;
        if (!have || r.rho > best.rho) {
            best = std::move(r);
            best_members = m;
            have = true;
        }
    }
    SpectralResult out = best;
    out.iterations = iterations;
    out.perron.assign(g.order(), 0.0);
    for (std::size_t i = 0; i < best_members.size(); ++i) out.perron[best_members[i]] = best.perron[i];
    return out;
}

double rho_complete_split(std::size_t n) {
    if (n < 3) throw PreconditionError("rho_complete_split needs n >= 3");
    return (1.0 + std::sqrt(8.0 * double(n) - 15.0)) / 2.0;
}

double rho0(std::size_t n) {
    if (n < 5) throw PreconditionError("rho0 needs n >= 5");
    return 1.5 + std::sqrt(2.0 * double(n) - 3.75);
}

double rho0_cycle_entry(std::size_t n) { return 2.0 / (rho0(n) - 2.0); }

BoundEnvelope bounds(std::size_t n, std::size_t gamma) {
    BoundEnvelope b;
    b.rho0 = rho0(n);
    const double g = double(gamma);
    b.lower = b.rho0 + (3 * g - 1) / double(n);
    b.upper = b.rho0 + (3 * g - 0.95) / double(n);
    b.ellingham_zha = 2.0 + std::sqrt(2.0 * double(n) + 8 * g - 6);
    const std::uint64_t a = 300 + 180 * std::uint64_t(gamma) + 24 * std::uint64_t(gamma) * gamma;
    b.n_threshold = 50 * a * a;
    return b;
}

double rayleigh_delta(const Graph& g, std::span<const double> x, std::span<const Edge> add,
                      std::span<const Edge> del) {
    if (x.size() != g.order()) throw PreconditionError("vector length differs from graph order");
    long double xx = 0;
    for (double v : x) {
        if (!(v > 0)) throw PreconditionError("rayleigh_delta needs a positive vector");
        xx += static_cast<long double>(v) * v;
    }
    long double s = 0;
    for (const Edge& e : add) {
        if (e.v >= g.order() || e.u == e.v) throw PreconditionError("added pair is not a valid edge");
        if (g.has_edge(e.u, e.v)) {
            throw PreconditionError("added edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    "} already present");
        }
        s += static_cast<long double>(x[e.u]) * x[e.v];
    }
    for (const Edge& e : del) {
        if (!g.has_edge(e.u, e.v)) {
            throw PreconditionError("deleted edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    "} not present");
        }
        s -= static_cast<long double>(x[e.u]) * x[e.v];
    }
    return double(2 * s / xx);
}

} // namespace surfex
