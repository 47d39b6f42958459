#pragma once

// Analytic-side path: the truncated series e^{-x0 D} f = sum_j (-x0)^j/j! D^j f
// on the Gaussian-polynomial class, the transform V = e^{-x0 D} e^{Delta/2},
// and the monogenic basis psi_k built from monomial-times-Gaussian data.
//
// Powers are stored pre-scaled: powers[j] = D^j f / j!, advanced by
// powers[j+1] = dirac_apply(powers[j]) / (j+1).  The raw D^j f coefficients
// overflow doubles near the order cap while the scaled ones stay bounded, and
// the evaluation weight is then simply (-x0)^j.

#include <cmath>
#include <vector>

#include "weylcst/errors.hpp"
#include "weylcst/field.hpp"
#include "weylcst/gaussian_poly.hpp"
#include "weylcst/multivector.hpp"

namespace weylcst {

inline constexpr int ck_order_cap = 200;

// Evaluation box |x0| <= T, |x|_inf <= X declared at construction; the
// tolerance contract ("last included term's sup-norm < tau") is relative to
// this box.
struct SeriesBox {
    double T = 1.0;
    double X = 4.0;
};

namespace detail {

// Rigorous sup bound of |P(x) e^{-alpha|x|^2}| over |x|_inf <= X: per term,
// the axes separate and |t|^n e^{-alpha t^2} peaks at t = min(X, sqrt(n/2a));
// terms combine by triangle inequality (an overestimate, which only pushes
// the truncation order up, never under).
inline double gp_sup_bound(const GaussianPolynomial& f, double X) {
    const int m = f.m();
    const double alpha = f.alpha();
    std::vector<double> axis_max(256, -1.0);
    auto axis_bound = [&](int n) {
        if (axis_max[n] >= 0.0) return axis_max[n];
        double t = X;
        if (alpha > 0.0) t = std::min(X, std::sqrt(n / (2.0 * alpha)));
        const double v = std::pow(t, n) * std::exp(-alpha * t * t);
        axis_max[n] = v;
        return v;
    };
    double bound = 0.0;
    for (const auto& [key, c] : f.terms()) {
        double w = 1.0;
        for (int a = 0; a < m; ++a) w *= axis_bound(index_component(key, a));
        // Coefficient magnitude via a scaled sum: deep powers carry
        // coefficients near 1e-200 whose squares underflow to zero, and a
        // zero here would fake convergence once multiplied by T^j.
        const double scale = c.max_abs();
        if (scale == 0.0) continue;
        double q = 0.0;
        for (size_t b = 0; b < c.size(); ++b) {
            const double re = c[b].real() / scale;
            const double im = c[b].imag() / scale;
            q += re * re + im * im;
        }
        bound += w * scale * std::sqrt(q);
    }
    return bound;
}

}  // namespace detail

class CKSeries {
public:
    CKSeries() = default;

    const GaussianPolynomial& base() const { return scaled_powers_.front(); }
    const std::vector<GaussianPolynomial>& scaled_powers() const { return scaled_powers_; }
    int order() const { return static_cast<int>(scaled_powers_.size()) - 1; }
    double tau() const { return tau_; }
    const SeriesBox& box() const { return box_; }
    int m() const { return base().m(); }

    // D^j f (unscaled); overflows past j ~ 170 by the nature of the factorial,
    // which is why it is an accessor and not the storage format.
    GaussianPolynomial power(int j) const {
        GaussianPolynomial p = scaled_powers_.at(j);
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        p *= fact;
        return p;
    }

    // sum_j w_j * powers[j] as a single class member; the standard evaluation
    // weight is w_j = (-x0)^j.
    GaussianPolynomial collapse_with_weights(const std::vector<double>& w) const {
        GaussianPolynomial acc(m(), base().alpha());
        const size_t n = std::min(w.size(), scaled_powers_.size());
        for (size_t j = 0; j < n; ++j) acc.axpy(w[j], scaled_powers_[j]);
        return acc;
    }

    GaussianPolynomial collapse_at(double x0) const {
        std::vector<double> w(scaled_powers_.size());
        double f = 1.0;
        for (size_t j = 0; j < w.size(); ++j) {
            w[j] = f;
            f *= -x0;
        }
        return collapse_with_weights(w);
    }

    Multivector eval(double x0, const std::vector<double>& x) const {
        return collapse_at(x0).eval(x);
    }

    friend CKSeries ck_extend(const GaussianPolynomial&, int);
    friend CKSeries ck_extend(const GaussianPolynomial&, double, const SeriesBox&);
    friend CKSeries ck_series_from_parts(std::vector<GaussianPolynomial> powers, double tau,
                                         const SeriesBox& box);

private:
    std::vector<GaussianPolynomial> scaled_powers_;
    double tau_ = 0.0;  // 0 marks a fixed-order series
    SeriesBox box_;
};

// Fixed-order variant.
inline CKSeries ck_extend(const GaussianPolynomial& f, int J) {
    check_degree_cap(f, "ck_extend");
    if (J < 0 || J > ck_order_cap)
        throw dimension_error("ck_extend: order must be in 0.." + std::to_string(ck_order_cap));
    CKSeries s;
    s.scaled_powers_.reserve(J + 1);
    s.scaled_powers_.push_back(f);
    for (int j = 0; j < J; ++j) {
        GaussianPolynomial next = dirac_apply(s.scaled_powers_.back());
        next *= 1.0 / (j + 1);
        s.scaled_powers_.push_back(std::move(next));
    }
    return s;
}

// Tolerance-driven variant: extends until two consecutive terms have sup
// bound below tau on the declared box (two, so an odd/even parity zero cannot
// fake convergence).
inline CKSeries ck_extend(const GaussianPolynomial& f, double tau, const SeriesBox& box) {
    check_degree_cap(f, "ck_extend");
    if (tau <= 0.0) throw dimension_error("ck_extend: tolerance must be positive");
    CKSeries s;
    s.tau_ = tau;
    s.box_ = box;
    s.scaled_powers_.push_back(f);

    double t_pow = 1.0;  // T^j
    double prev_bound = detail::gp_sup_bound(f, box.X);
    for (int j = 0; j < ck_order_cap; ++j) {
        GaussianPolynomial next = dirac_apply(s.scaled_powers_.back());
        next *= 1.0 / (j + 1);
        t_pow *= box.T;
        const double bound = t_pow * detail::gp_sup_bound(next, box.X);
        s.scaled_powers_.push_back(std::move(next));
        if (bound < tau && prev_bound < tau) return s;
        prev_bound = bound;
    }
    const double last = prev_bound;
    throw truncation_error("ck_extend: series tail still " + std::to_string(last) +
                               " above tau=" + std::to_string(tau) + " at the order cap " +
                               std::to_string(ck_order_cap),
                           last, ck_order_cap);
}

// Reassembles a series from serialized parts (trusts the stored powers).
inline CKSeries ck_series_from_parts(std::vector<GaussianPolynomial> powers, double tau,
                                     const SeriesBox& box) {
    if (powers.empty()) throw io_error("CK series needs at least the base power");
    CKSeries s;
    s.scaled_powers_ = std::move(powers);
    s.tau_ = tau;
    s.box_ = box;
    return s;
}

// V(h) = e^{-x0 D} e^{Delta/2} h: heat flow first, then the series; the
// x0 = 0 restriction is the heat image coefficient-exactly.
inline CKSeries cst_analytic(const GaussianPolynomial& h, double tau,
                             const SeriesBox& box = SeriesBox{}) {
    return ck_extend(heat_halftime(h), tau, box);
}

// psi_k: CK extension of x^k e^{-|x|^2/4}, equal to 2^{m/2} V(phi_k).
inline CKSeries psi_basis(const MultiIndex& k, double tau, const SeriesBox& box = SeriesBox{}) {
    const int m = static_cast<int>(k.size());
    check_m(m);
    int total = 0;
    for (int ka : k) total += ka;
    if (total > gp_degree_cap)
        throw dimension_error("psi_basis: |k| exceeds the degree cap");
    GaussianPolynomial base =
        GaussianPolynomial::monomial(m, 0.25, k, Multivector::scalar(m, 1.0));
    return ck_extend(base, tau, box);
}

// One-variable real polynomials in x0, coefficient vector indexed by degree.
using X0Poly = std::vector<double>;

// e^{-(1/2) d^2/dx0^2} applied term-exactly:
//   x0^n -> sum_{j <= n/2} (-1/2)^j / j! * n!/(n-2j)! * x0^{n-2j}.
inline X0Poly neg_heat_x0_poly(const X0Poly& q) {
    if (static_cast<int>(q.size()) - 1 > gp_degree_cap)
        throw dimension_error("neg_heat_x0_poly: degree exceeds the cap");
    X0Poly out(q.size(), 0.0);
    for (int n = 0; n < static_cast<int>(q.size()); ++n) {
        if (q[n] == 0.0) continue;
        // c_j = (-1/2)^j/j! * n!/(n-2j)!, advanced by
        // c_{j+1} = c_j * (-1/2) (n-2j)(n-2j-1)/(j+1).
        double c = 1.0;
        for (int j = 0; 2 * j <= n; ++j) {
            out[n - 2 * j] += q[n] * c;
            c *= -0.5 * (n - 2 * j) * (n - 2 * j - 1) / (j + 1);
        }
    }
    return out;
}

// Positive-time sibling e^{+(1/2) d^2/dx0^2}, the exact inverse of
// neg_heat_x0_poly on polynomials; all contributions are positive, so it is
// the numerically stable direction and the one the generalized-Hermite
// verification sums.
inline X0Poly pos_heat_x0_poly(const X0Poly& q) {
    X0Poly out(q.size(), 0.0);
    for (int n = 0; n < static_cast<int>(q.size()); ++n) {
        if (q[n] == 0.0) continue;
        double c = 1.0;
        for (int j = 0; 2 * j <= n; ++j) {
            out[n - 2 * j] += q[n] * c;
            c *= 0.5 * (n - 2 * j) * (n - 2 * j - 1) / (j + 1);
        }
    }
    return out;
}

// Value of e^{+(1/2) d^2/dx0^2}[x0^n] at x0; usable beyond the polynomial cap
// (the series engines need n up to the order cap).
inline double pos_heat_monomial_value(int n, double x0) {
    double c = 1.0;
    double acc = 0.0;
    for (int j = 0; 2 * j <= n; ++j) {
        acc += c * std::pow(x0, n - 2 * j);
        c *= 0.5 * (n - 2 * j) * (n - 2 * j - 1) / (j + 1);
    }
    return acc;
}

// Samples a series on a grid for each x0 (collapse once per slice, then a
// plain lattice evaluation); feeds the finite-difference monogenicity checks
// and the CLI basis export.
inline SpacetimeField sample_ck(const CKSeries& series, const std::vector<double>& x0_values,
                                const GridSpec& grid) {
    if (grid.m != series.m()) throw dimension_error("sample_ck: grid dimension mismatch");
    SpacetimeField out;
    out.x0_values = x0_values;
    const size_t total = grid.total_points();
    std::vector<double> x(grid.m);
    for (double x0 : x0_values) {
        const GaussianPolynomial slice_poly = series.collapse_at(x0);
        SampledField slice(grid);
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rest = flat;
            for (int a = grid.m - 1; a >= 0; --a) {
                x[a] = grid.coordinate(static_cast<int>(rest % static_cast<size_t>(grid.N)));
                rest /= static_cast<size_t>(grid.N);
            }
            slice.set_value(flat, slice_poly.eval(x));
        }
        out.slices.push_back(std::move(slice));
    }
    out.validate();
    return out;
}

}  // namespace weylcst
