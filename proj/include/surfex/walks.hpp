#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "surfex/graph.hpp"

namespace surfex {

using BigInt = boost::multiprecision::cpp_int;

// An l-walk is a sequence of l edges; w^(l)(H) = 1^T A^l 1, so w^(1) = 2e.
struct WalkProfile {
    enum class Mode { exact, scaled };

    Mode mode = Mode::exact;
    double scale = 1.0;          // scaled mode stores w^(l) / scale^l
    std::vector<BigInt> exact;   // exact[l-1] = w^(l)
    std::vector<double> scaled;  // scaled[l-1] = w^(l) / scale^l

    std::size_t length() const { return mode == Mode::exact ? exact.size() : scaled.size(); }
    // JSON array; decimal strings in exact mode.
    std::string to_json() const;
};

WalkProfile walk_counts(const Graph& h, std::size_t L);
WalkProfile walk_counts_scaled(const Graph& h, std::size_t L, double scale);

BigInt w2_closed_form(const Graph& h); // sum d(v)^2
BigInt w3_closed_form(const Graph& h); // sum over edges 2 d(u) d(v)
bool check_w2_w3(const Graph& h);

struct WalkComparison {
    bool equal = true;
    bool inconclusive = false; // equal through Lmax; nothing is extrapolated
    std::size_t k = 0;         // first differing length
    int sign = 0;              // sign of w^(k)(H1) - w^(k)(H2)
};

WalkComparison walk_compare(const Graph& h1, const Graph& h2, std::size_t Lmax);

// One part of a complete r-partite frame: n_i vertices carrying graph H_i
// (|H_i| <= n_i; missing vertices are isolated).
struct ZhangPart {
    std::size_t n = 0;
    Graph h;
};

struct ZhangResult {
    double rho = 0.0;
    double low = 0.0;   // final bracket
    double high = 0.0;
    std::size_t bisections = 0;
};

// Root of sum_i 1 / (1 + n_i/rho + sum_l w^(l)(H_i)/rho^(l+1)) = r - 1 by
// bisection on [max Delta(H_i) + 1, sum n_i]; the left side increases with
// rho. Series tails are bounded with w^(l+1) <= Delta w^(l).
ZhangResult zhang_solve(std::span<const ZhangPart> parts, double tol = 1e-12);
double zhang_rho(std::span<const ZhangPart> parts, double tol = 1e-12);

} // namespace surfex
