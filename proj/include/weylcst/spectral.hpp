#pragma once

// Fourier-side realization of the transform.  With the inversion convention
//   f(x) = (2pi)^{-m/2} int e^{i(p,x)} fhat(p) dp,
// the transform of a sampled field is evaluated slice by slice as
//   F(x0, x) = (2pi)^{-m/2} int e^{-|p|^2/2} e^{i(p,x)} E(x0, p) fhat(p) dp,
// where E(x0, p) = e^{-i x0 p} = cosh(x0|p|) - i sinh(x0|p|) p/|p| is the
// Clifford exponential acting by left multiplication on fhat(p).  Each output
// slice solves the Weyl equation (d/dx0 + D) F = 0 up to truncation error,
// and the x0 = 0 slice is the half-time heat evolution of f.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "weylcst/errors.hpp"
#include "weylcst/fft.hpp"
#include "weylcst/field.hpp"
#include "weylcst/multivector.hpp"

namespace weylcst {

// Projectors chi_pm(p) = (1 pm i p/|p|) / 2 onto the pm|p| eigenspaces of
// the operator i p (left multiplication): i p chi_pm = pm |p| chi_pm.
inline std::pair<Multivector, Multivector> chi_projectors(int m, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != m) throw dimension_error("chi_projectors: p has wrong dimension");
    double norm2 = 0.0;
    for (double pa : p) norm2 += pa * pa;
    if (norm2 <= 0.0)
        throw dimension_error("chi_projectors: p = 0 has no distinguished direction");
    const double inv = 1.0 / std::sqrt(norm2);

    Multivector plus = Multivector::scalar(m, 0.5);
    Multivector minus = plus;
    for (int a = 0; a < m; ++a) {
        const cplx half_unit = cplx{0.0, 0.5} * (p[a] * inv);  // (i/2) p_a/|p|
        plus[static_cast<size_t>(1) << a] = half_unit;
        minus[static_cast<size_t>(1) << a] = -half_unit;
    }
    return {plus, minus};
}

namespace detail {
// sinh(z)/z, stable through z = 0.
inline double sinhc(double z) {
    const double az = std::abs(z);
    if (az < 1e-4) {
        const double z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}
}  // namespace detail

// e^{-i x0 p} = cosh(x0|p|) - i sinh(x0|p|) p/|p|, evaluated through the
// cosh/sinh closed form so p = 0 needs no special-casing beyond the sinhc
// series (the limit value is the scalar 1).
inline Multivector clifford_exponential(int m, double x0, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != m)
        throw dimension_error("clifford_exponential: p has wrong dimension");
    double norm2 = 0.0;
    for (double pa : p) norm2 += pa * pa;
    const double mag = std::sqrt(norm2);

    Multivector out = Multivector::scalar(m, std::cosh(x0 * mag));
    // sinh(x0|p|)/|p| = x0 sinhc(x0|p|)
    const double slope = x0 * detail::sinhc(x0 * mag);
    for (int a = 0; a < m; ++a)
        out[static_cast<size_t>(1) << a] = cplx{0.0, -slope * p[a]};
    return out;
}

// Monogenic plane wave e^{i((p,x) - x0 p)} = e^{i(p,x)} e^{-i x0 p}.
inline Multivector plane_wave(int m, double x0, const std::vector<double>& x,
                              const std::vector<double>& p) {
    if (static_cast<int>(x.size()) != m) throw dimension_error("plane_wave: x has wrong dimension");
    double phase = 0.0;
    for (int a = 0; a < m; ++a) phase += p[a] * x[a];
    Multivector out = clifford_exponential(m, x0, p);
    out *= std::polar(1.0, phase);
    return out;
}

namespace detail {
// Shared DFT core: transforms every blade component along every axis and
// applies the alternating-sign twist that accounts for the grid starting at
// -L (e^{i p L} = (-1)^{n~} on the frequency lattice).  With scale factors
// h^m (2pi)^{-m/2} forward and (pi/L)^m (2pi)^{-m/2} inverse, the pair
// approximates the continuum transform and inverts exactly on the grid.
inline SampledField dft_with_twist(const SampledField& f, int sign, double scale) {
    const GridSpec& g = f.grid();
    SampledField out = f;
    const size_t total = g.total_points();

    // Per-axis alternating sign combines into parity of the flat-index digit
    // sum; precompute it once.
    std::vector<double> twist(total);
    for (size_t flat = 0; flat < total; ++flat) {
        int ones = 0;
        size_t rest = flat;
        for (int a = 0; a < g.m; ++a) {
            ones += static_cast<int>(rest % static_cast<size_t>(g.N)) & 1;
            rest /= static_cast<size_t>(g.N);
        }
        twist[flat] = (ones & 1) ? -1.0 : 1.0;
    }

    for (size_t b = 0; b < out.blades(); ++b) {
        auto& comp = out.component(b);
        if (sign > 0) {  // inverse: twist in frequency space first
            for (size_t i = 0; i < total; ++i) comp[i] *= twist[i];
        }
        for (int axis = 0; axis < g.m; ++axis) fft_axis(comp, g.m, g.N, axis, sign);
        if (sign < 0) {  // forward: twist after transforming to frequencies
            for (size_t i = 0; i < total; ++i) comp[i] *= twist[i];
        }
        for (size_t i = 0; i < total; ++i) comp[i] *= scale;
    }
    return out;
}
}  // namespace detail

// fhat(p_n) ~ (2pi)^{-m/2} int e^{-i(p,x)} f(x) dx on the signed frequency
// lattice (wrapped storage order; GridSpec::frequency maps index -> p).
inline SampledField fourier_forward(const SampledField& f) {
    const GridSpec& g = f.grid();
    const double scale = std::pow(g.spacing() / std::sqrt(2.0 * std::numbers::pi), g.m);
    return detail::dft_with_twist(f, -1, scale);
}

inline SampledField fourier_inverse(const SampledField& fhat) {
    const GridSpec& g = fhat.grid();
    const double dp = std::numbers::pi / g.L;
    const double scale = std::pow(dp / std::sqrt(2.0 * std::numbers::pi), g.m);
    return detail::dft_with_twist(fhat, +1, scale);
}

// The transform on sampled data.  Multiplies fhat(p) from the LEFT by
// e^{-|p|^2/2} E(x0, p) for each requested x0, then inverse-transforms.
// Non-decaying inputs and |x0| beyond L/2 degrade the periodized convolution,
// so both conditions attach warnings; NaN input is rejected outright.
inline SpacetimeField cst_spectral(const SampledField& f, const std::vector<double>& x0_values) {
    const GridSpec& g = f.grid();
    if (f.has_nan()) throw io_error("cst_spectral: input field contains NaN samples");
    for (size_t i = 0; i + 1 < x0_values.size(); ++i)
        if (!(x0_values[i] < x0_values[i + 1]))
            throw dimension_error("cst_spectral: x0 values must be strictly increasing");

    SpacetimeField out;
    out.x0_values = x0_values;

    const double boundary = f.boundary_max_abs();
    if (boundary > 1e-10)
        out.warnings.push_back(
            "input magnitude " + std::to_string(boundary) +
            " at the box boundary exceeds 1e-10; periodic wrap-around may corrupt the result");
    for (double x0 : x0_values) {
        if (std::abs(x0) > g.L / 2.0) {
            out.warnings.push_back("|x0| exceeds L/2; multiplier growth e^{|x0||p|} amplifies "
                                   "aliasing error beyond the default tolerance");
            break;
        }
    }

    const SampledField fhat = fourier_forward(f);
    const size_t total = g.total_points();
    const size_t nblades = fhat.blades();

    // Left-multiplication tables for the generators: (e_a u)_C = sgn * u_{C
    // xor bit_a}.
    std::vector<std::vector<double>> gen_sign(g.m, std::vector<double>(nblades));
    for (int a = 0; a < g.m; ++a)
        for (size_t c = 0; c < nblades; ++c)
            gen_sign[a][c] =
                blade_product_sign(1u << a, static_cast<unsigned>(c) ^ (1u << a));

    std::vector<double> p(g.m);
    std::vector<cplx> in_point(nblades), out_point(nblades);
    for (double x0 : x0_values) {
        SampledField slice_hat(g);
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rest = flat;
            double norm2 = 0.0;
            for (int a = g.m - 1; a >= 0; --a) {
                p[a] = g.frequency(static_cast<int>(rest % static_cast<size_t>(g.N)));
                rest /= static_cast<size_t>(g.N);
                norm2 += p[a] * p[a];
            }
            const double mag = std::sqrt(norm2);
            const double damp = std::exp(-0.5 * norm2);
            const double ch = damp * std::cosh(x0 * mag);
            const double sh = damp * x0 * detail::sinhc(x0 * mag);

            for (size_t b = 0; b < nblades; ++b) in_point[b] = fhat.component(b)[flat];
            // (ch - i sh p) u : scalar part plus one-vector left action.
            for (size_t c = 0; c < nblades; ++c) {
                cplx acc = ch * in_point[c];
                for (int a = 0; a < g.m; ++a) {
                    const size_t src = c ^ (static_cast<size_t>(1) << a);
                    acc += cplx{0.0, -sh * p[a]} * gen_sign[a][c] * in_point[src];
                }
                out_point[c] = acc;
            }
            for (size_t b = 0; b < nblades; ++b) slice_hat.component(b)[flat] = out_point[b];
        }
        out.slices.push_back(fourier_inverse(slice_hat));
    }
    out.validate();
    return out;
}

// Max norm of the discrete Weyl operator (central difference d/dx0 + central
// difference D) over interior sample points.
inline double weyl_residual(const SpacetimeField& F) {
    F.validate();
    if (F.slices.size() < 3)
        throw dimension_error("weyl_residual: need at least 3 x0 slices");
    const double dt = F.x0_values[1] - F.x0_values[0];
    for (size_t t = 1; t + 1 < F.x0_values.size(); ++t) {
        const double step = F.x0_values[t + 1] - F.x0_values[t];
        if (std::abs(step - dt) > 1e-12 * std::max(std::abs(dt), 1.0))
            throw dimension_error("weyl_residual: x0 slices must be uniformly spaced");
    }

    const GridSpec& g = F.slices[0].grid();
    const double h = g.spacing();
    const size_t nblades = F.slices[0].blades();
    std::vector<std::vector<double>> gen_sign(g.m, std::vector<double>(nblades));
    for (int a = 0; a < g.m; ++a)
        for (size_t c = 0; c < nblades; ++c)
            gen_sign[a][c] =
                blade_product_sign(1u << a, static_cast<unsigned>(c) ^ (1u << a));

    // Strides for +-1 neighbor moves per axis.
    std::vector<size_t> stride(g.m, 1);
    for (int a = g.m - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<size_t>(g.N);

    double worst = 0.0;
    const size_t total = g.total_points();
    std::vector<int> digits(g.m);
    for (size_t t = 1; t + 1 < F.slices.size(); ++t) {
        const SampledField& mid_prev = F.slices[t - 1];
        const SampledField& mid_next = F.slices[t + 1];
        const SampledField& cur = F.slices[t];
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rest = flat;
            bool interior = true;
            for (int a = g.m - 1; a >= 0; --a) {
                digits[a] = static_cast<int>(rest % static_cast<size_t>(g.N));
                rest /= static_cast<size_t>(g.N);
                if (digits[a] == 0 || digits[a] == g.N - 1) interior = false;
            }
            if (!interior) continue;

            double res2 = 0.0;
            for (size_t c = 0; c < nblades; ++c) {
                cplx r = (mid_next.component(c)[flat] - mid_prev.component(c)[flat]) / (2.0 * dt);
                for (int a = 0; a < g.m; ++a) {
                    const size_t src = c ^ (static_cast<size_t>(1) << a);
                    const cplx dx = (cur.component(src)[flat + stride[a]] -
                                     cur.component(src)[flat - stride[a]]) /
                                    (2.0 * h);
                    r += gen_sign[a][c] * dx;
                }
                res2 += std::norm(r);
            }
            worst = std::max(worst, std::sqrt(res2));
        }
    }
    return worst;
}

}  // namespace weylcst
