#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "surfex/graph.hpp"

namespace surfex {

struct SpectralOptions {
    double tol = 1e-10;                  // residual <= tol * max(1, rho)
    std::size_t max_iterations = 1000000;
    // Diagonal shift c in A + cI. Unset: c = max(1, rho_lb / 2) where rho_lb
    // is the larger of the average-degree and sqrt(mean d^2) lower bounds.
    std::optional<double> shift;
};

struct SpectralResult {
    double rho = 0.0;
    std::vector<double> perron;  // max entry 1
    double residual = 0.0;       // ||A x - rho x||_inf
    std::size_t iterations = 0;
    double shift = 0.0;
};

// Power iteration from the all-ones vector. Disconnected graphs are solved
// per component; the Perron vector is supported on the winning component.
// Throws NonConvergence (carrying the last estimate) at the iteration cap.
SpectralResult spectral_radius(const Graph& g, const SpectralOptions& opts = {});

// (1 + sqrt(8n - 15)) / 2, the spectral radius of K2 join (n-2)K1.
double rho_complete_split(std::size_t n);
// 3/2 + sqrt(2n - 15/4), the spectral radius of K2 join C_{n-2}.
double rho0(std::size_t n);
// Non-dominating Perron entry of K2 join C_{n-2} when the dominating ones are 1.
double rho0_cycle_entry(std::size_t n);

struct BoundEnvelope {
    double rho0 = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double ellingham_zha = 0.0;
    std::uint64_t n_threshold = 0;
};

BoundEnvelope bounds(std::size_t n, std::size_t gamma);

// (2 / x.x) * (sum_{uv in add} x_u x_v - sum_{uv in del} x_u x_v)
double rayleigh_delta(const Graph& g, std::span<const double> x, std::span<const Edge> add,
                      std::span<const Edge> del);

} // namespace surfex
