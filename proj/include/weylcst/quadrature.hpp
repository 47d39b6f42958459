#pragma once

// One-dimensional quadrature rules used by the verification harness:
//  - Gauss-Hermite against the weight e^{-x0^2} (the x0 factor of the measure
//    dmu = pi^{-1/2} e^{-x0^2} dx0 dx), nodes/weights by Newton iteration on
//    the orthonormal Hermite recurrence;
//  - uniform trapezoid on a box [-L, L] (spectrally accurate for the smooth,
//    rapidly decaying x-integrands that arise here);
//  - periodic trapezoid on [0, 2pi), exact for trigonometric polynomials of
//    degree below the point count.
// Tensorization over axes is done by the consumers.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "weylcst/errors.hpp"

namespace weylcst {

struct QuadratureRule {
    enum class Kind { gauss_hermite, tensor_trapezoid, torus_trapezoid };

    Kind kind;
    std::vector<double> nodes;
    std::vector<double> weights;  // strictly positive

    static QuadratureRule gauss_hermite(int n);
    static QuadratureRule trapezoid(double L, int points_per_axis);
    static QuadratureRule torus_trapezoid(int points_per_axis);
};

// Gauss-Hermite: roots of H_n with weights 2 / (orthonormal derivative)^2.
// Initial guesses follow the classical asymptotic ladder; Newton converges
// quadratically and two polish steps pin each root to machine precision,
// which the degree-126 moment self-test below needs.
inline QuadratureRule QuadratureRule::gauss_hermite(int n) {
    if (n < 1 || n > 256)
        throw dimension_error("gauss_hermite: node count must be in 1..256");
    QuadratureRule rule{Kind::gauss_hermite, std::vector<double>(n), std::vector<double>(n)};

    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    // Orthonormal Hermite value and (scaled) previous value at z.
    auto eval = [&](double z, int order) {
        double p1 = pim4, p2 = 0.0;
        for (int j = 1; j <= order; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
        }
        return std::pair{p1, p2};  // (h_n(z), h_{n-1}(z))
    };

    const int half = (n + 1) / 2;
    std::vector<double> found(half, 0.0);  // roots located so far, largest first
    for (int i = 0; i < half; ++i) {
        double z;
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z = found[0] - 1.14 * std::pow(n, 0.426) / found[0];
        } else if (i == 2) {
            z = 1.86 * found[1] - 0.86 * found[0];
        } else if (i == 3) {
            z = 1.91 * found[2] - 0.91 * found[1];
        } else {
            z = 2.0 * found[i - 1] - found[i - 2];
        }
        int polish = 0;
        for (int it = 0; it < 100; ++it) {
            const auto [p1, p2] = eval(z, n);
            const double pp = std::sqrt(2.0 * n) * p2;  // derivative of h_n
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::abs(z) + 1e-300 && ++polish >= 3) break;
        }
        found[i] = z;
        const auto [p1, p2] = eval(z, n);
        const double pp = std::sqrt(2.0 * n) * p2;

        // Largest root first; mirror onto the negative half.
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    // Ascending order is friendlier for slice sweeps.
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

inline QuadratureRule QuadratureRule::trapezoid(double L, int points_per_axis) {
    if (L <= 0.0) throw dimension_error("trapezoid: box half-width must be positive");
    if (points_per_axis < 2) throw dimension_error("trapezoid: need at least 2 points");
    const int n = points_per_axis;
    QuadratureRule rule{Kind::tensor_trapezoid, std::vector<double>(n), std::vector<double>(n)};
    const double h = 2.0 * L / (n - 1);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = -L + i * h;
        rule.weights[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
    }
    return rule;
}

inline QuadratureRule QuadratureRule::torus_trapezoid(int points_per_axis) {
    if (points_per_axis < 1) throw dimension_error("torus_trapezoid: need at least 1 point");
    const int n = points_per_axis;
    QuadratureRule rule{Kind::torus_trapezoid, std::vector<double>(n), std::vector<double>(n)};
    const double h = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = i * h;
        rule.weights[i] = h;
    }
    return rule;
}

// Moment self-test for a Gauss-Hermite rule: compares sum w x^{2j} against
// (2j-1)!! sqrt(pi) / 2^j for j <= n-1 and returns the worst relative error.
inline double gauss_hermite_selftest(const QuadratureRule& rule) {
    if (rule.kind != QuadratureRule::Kind::gauss_hermite)
        throw dimension_error("selftest requires a Gauss-Hermite rule");
    const int n = static_cast<int>(rule.nodes.size());
    std::vector<double> pw(n);
    for (int i = 0; i < n; ++i) pw[i] = rule.weights[i];

    double worst = 0.0;
    double reference = std::sqrt(std::numbers::pi);  // j = 0
    for (int j = 0; j <= n - 1; ++j) {
        if (j > 0) reference *= (2.0 * j - 1.0) / 2.0;
        double computed = 0.0;
        for (int i = 0; i < n; ++i) computed += pw[i];
        worst = std::max(worst, std::abs(computed - reference) / reference);
        // Prepare x^{2(j+1)} factors for the next pass.
        for (int i = 0; i < n; ++i) pw[i] *= rule.nodes[i] * rule.nodes[i];
    }
    return worst;
}

}  // namespace weylcst
