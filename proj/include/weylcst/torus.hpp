#pragma once

// Transform on the flat torus T^m = R^m / 2pi Z^m.  Data lives in Fourier
// coefficient space (finite mode sets k in Z^m with Multivector coefficients
// f_k); the transform damps each mode by e^{-|k|^2/2} and extends it
// monogenically to R x T^m through the Clifford exponential:
//   (Vf)(x0, x) = (2pi)^{-m/2} sum_k e^{-|k|^2/2} e^{i(k,x)} E(x0, k) f_k.
// Inner products are coefficient pairings sum_k (f_k, h_k) — the reading
// under which the Parseval identity is exact.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "weylcst/errors.hpp"
#include "weylcst/multivector.hpp"
#include "weylcst/quadrature.hpp"
#include "weylcst/spectral.hpp"

namespace weylcst {

using TorusIndex = std::vector<int>;  // k in Z^m

namespace detail {

inline constexpr int torus_index_bound = 127;

inline uint64_t pack_torus_index(const TorusIndex& k, int m) {
    if (static_cast<int>(k.size()) != m)
        throw dimension_error("torus mode index length does not match m");
    uint64_t key = 0;
    for (int a = 0; a < m; ++a) {
        if (k[a] < -torus_index_bound || k[a] > torus_index_bound)
            throw dimension_error("torus mode component out of range");
        key |= static_cast<uint64_t>(k[a] + 128) << (8 * a);
    }
    return key;
}

inline TorusIndex unpack_torus_index(uint64_t key, int m) {
    TorusIndex k(m);
    for (int a = 0; a < m; ++a) k[a] = static_cast<int>((key >> (8 * a)) & 0xff) - 128;
    return k;
}

}  // namespace detail

class TorusCoefficients {
public:
    TorusCoefficients() = default;
    explicit TorusCoefficients(int m) : m_(m) { check_m(m); }

    int m() const { return m_; }
    const std::map<uint64_t, Multivector>& modes() const { return modes_; }
    bool empty() const { return modes_.empty(); }

    void add_mode(const TorusIndex& k, const Multivector& coeff) {
        if (coeff.m() != m_) throw dimension_error("torus coefficient has wrong dimension");
        const uint64_t key = detail::pack_torus_index(k, m_);
        auto [it, fresh] = modes_.try_emplace(key, coeff);
        if (!fresh) it->second += coeff;
        if (it->second.max_abs() == 0.0) modes_.erase(it);
    }

    const Multivector* find(const TorusIndex& k) const {
        auto it = modes_.find(detail::pack_torus_index(k, m_));
        return it == modes_.end() ? nullptr : &it->second;
    }

    int max_abs_index() const {
        int worst = 0;
        for (const auto& [key, c] : modes_) {
            for (int ka : detail::unpack_torus_index(key, m_))
                worst = std::max(worst, std::abs(ka));
        }
        return worst;
    }

private:
    int m_ = 0;
    std::map<uint64_t, Multivector> modes_;
};

// The monogenic extension: stores per-mode damping and coefficient, evaluates
// anywhere on R x [0, 2pi)^m (2pi-periodic per axis by construction).
class TorusMonogenicField {
public:
    struct Mode {
        TorusIndex k;
        double damping;  // e^{-|k|^2/2}
        Multivector coeff;
    };

    TorusMonogenicField() = default;
    TorusMonogenicField(int m, std::vector<Mode> modes) : m_(m), modes_(std::move(modes)) {}

    int m() const { return m_; }
    const std::vector<Mode>& modes() const { return modes_; }

    // Heat coefficient of the x0 = 0 restriction: e^{-|k|^2/2} f_k, exact.
    Multivector heat_coefficient(const TorusIndex& k) const {
        for (const auto& mode : modes_)
            if (mode.k == k) return mode.damping * mode.coeff;
        return Multivector(m_);
    }

    // Per-slice precomputation: M_k = e^{-|k|^2/2} E(x0, k) f_k.
    std::vector<Multivector> slice_mode_values(double x0) const {
        std::vector<Multivector> vals;
        vals.reserve(modes_.size());
        std::vector<double> kd(m_);
        for (const auto& mode : modes_) {
            for (int a = 0; a < m_; ++a) kd[a] = mode.k[a];
            Multivector ek = clifford_exponential(m_, x0, kd);
            vals.push_back(mode.damping * geometric_product(ek, mode.coeff));
        }
        return vals;
    }

    Multivector eval(double x0, const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != m_)
            throw dimension_error("torus evaluation point has wrong dimension");
        const std::vector<Multivector> vals = slice_mode_values(x0);
        Multivector acc(m_);
        for (size_t i = 0; i < modes_.size(); ++i) {
            double phase = 0.0;
            for (int a = 0; a < m_; ++a) phase += modes_[i].k[a] * x[a];
            acc.axpy(std::polar(1.0, phase), vals[i]);
        }
        acc *= std::pow(2.0 * std::numbers::pi, -0.5 * m_);
        return acc;
    }

    // Values on the periodic lattice x_j = 2pi j / N per axis, row-major.
    std::vector<Multivector> sample_slice(double x0, int N) const {
        if (N < 1) throw dimension_error("sample_slice: need at least one point per axis");
        const std::vector<Multivector> vals = slice_mode_values(x0);
        size_t total = 1;
        for (int a = 0; a < m_; ++a) total *= static_cast<size_t>(N);

        std::vector<Multivector> out(total, Multivector(m_));
        const double h = 2.0 * std::numbers::pi / N;
        const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * m_);
        std::vector<int> digits(m_);
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rest = flat;
            for (int a = m_ - 1; a >= 0; --a) {
                digits[a] = static_cast<int>(rest % static_cast<size_t>(N));
                rest /= static_cast<size_t>(N);
            }
            Multivector& acc = out[flat];
            for (size_t i = 0; i < modes_.size(); ++i) {
                double phase = 0.0;
                for (int a = 0; a < m_; ++a) phase += modes_[i].k[a] * digits[a] * h;
                acc.axpy(std::polar(1.0, phase), vals[i]);
            }
            acc *= norm;
        }
        return out;
    }

private:
    int m_ = 0;
    std::vector<Mode> modes_;
};

inline TorusMonogenicField torus_cst(const TorusCoefficients& f) {
    std::vector<TorusMonogenicField::Mode> modes;
    modes.reserve(f.modes().size());
    for (const auto& [key, coeff] : f.modes()) {
        TorusIndex k = detail::unpack_torus_index(key, f.m());
        double norm2 = 0.0;
        for (int ka : k) norm2 += static_cast<double>(ka) * ka;
        modes.push_back({std::move(k), std::exp(-0.5 * norm2), coeff});
    }
    return TorusMonogenicField(f.m(), std::move(modes));
}

// Coefficient-space pairing sum_k (f_k, h_k) over the union of supports.
inline cplx torus_inner(const TorusCoefficients& f, const TorusCoefficients& h) {
    if (f.m() != h.m()) throw dimension_error("torus_inner: dimension mismatch");
    cplx acc{0.0, 0.0};
    for (const auto& [key, cf] : f.modes()) {
        auto it = h.modes().find(key);
        if (it != h.modes().end()) acc += hermitian_inner(cf, it->second);
    }
    return acc;
}

enum class TorusIsometryMode { analytic, quadrature };

// <Vf, Vh> under dmu = pi^{-1/2} e^{-x0^2} dx0 dx versus the coefficient
// pairing.  Analytic mode collapses the x-integral by mode orthogonality and
// uses pi^{-1/2} int e^{-x0^2} cosh(2|k|x0) dx0 = e^{|k|^2} (the sinh cross
// term integrates to zero by parity), which cancels the e^{-|k|^2} damping
// factor exactly.  Quadrature mode evaluates both fields and integrates
// numerically; e^{|k|^2} scales make that meaningless beyond |k|_inf = 3, so
// larger supports are rejected.
inline cplx torus_isometry_value(const TorusCoefficients& f, const TorusCoefficients& h,
                                 TorusIsometryMode mode, int hermite_nodes = 64) {
    if (f.m() != h.m()) throw dimension_error("torus_isometry_value: dimension mismatch");
    const int m = f.m();

    if (mode == TorusIsometryMode::analytic) {
        cplx acc{0.0, 0.0};
        for (const auto& [key, cf] : f.modes()) {
            auto it = h.modes().find(key);
            if (it == h.modes().end()) continue;
            const TorusIndex k = detail::unpack_torus_index(key, m);
            double norm2 = 0.0;
            for (int ka : k) norm2 += static_cast<double>(ka) * ka;

            const double damping2 = std::exp(-norm2);       // e^{-|k|^2} from both fields
            const double cosh_integral = std::exp(norm2);   // pi^{-1/2} int e^{-x0^2} cosh(2K x0)
            // The two exponentials cancel; past e^{+-300} the literal product
            // degenerates to inf * 0, so combine exponents there instead.
            const double cancel = (norm2 <= 300.0) ? damping2 * cosh_integral
                                                   : std::exp(-norm2 + norm2);
            acc += cancel * hermitian_inner(cf, it->second);

            if (norm2 > 0.0) {
                // pi^{-1/2} int e^{-x0^2} sinh(2K x0) dx0 = (e^{K^2}-e^{K^2})/2,
                // identically zero by parity; kept explicit so the analytic
                // path mirrors the proof term by term.
                const double sinh_integral = 0.5 * (std::exp(norm2) - std::exp(norm2));
                const double inv_mag = 1.0 / std::sqrt(norm2);
                std::vector<cplx> kc(m);
                for (int a = 0; a < m; ++a) kc[a] = k[a] * inv_mag;
                const Multivector khat = Multivector::one_vector(m, kc);
                acc += damping2 * sinh_integral * cplx{0.0, -1.0} *
                       hermitian_inner(geometric_product(khat, cf), it->second);
            }
        }
        return acc;
    }

    // Quadrature mode.
    const int kmax = std::max(f.max_abs_index(), h.max_abs_index());
    if (kmax > 3)
        throw dimension_error("torus_isometry_value: quadrature mode rejects |k|_inf > 3 "
                              "(e^{|k|^2} scales defeat double-precision quadrature)");
    const QuadratureRule gh = QuadratureRule::gauss_hermite(hermite_nodes);
    // Periodic trapezoid is exact for mode differences |k-k'|_inf <= 6 < N.
    const int N = 8;
    const double wx = std::pow(2.0 * std::numbers::pi / N, m);

    const TorusMonogenicField Vf = torus_cst(f);
    const TorusMonogenicField Vh = torus_cst(h);

    size_t total = 1;
    for (int a = 0; a < m; ++a) total *= static_cast<size_t>(N);

    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < gh.nodes.size(); ++i) {
        const std::vector<Multivector> sf = Vf.sample_slice(gh.nodes[i], N);
        const std::vector<Multivector> sh = Vh.sample_slice(gh.nodes[i], N);
        cplx slice{0.0, 0.0};
        for (size_t pnt = 0; pnt < total; ++pnt) slice += hermitian_inner(sf[pnt], sh[pnt]);
        acc += gh.weights[i] * wx * slice;
    }
    return acc / std::sqrt(std::numbers::pi);
}

}  // namespace weylcst
