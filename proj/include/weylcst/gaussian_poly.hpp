#pragma once

// Exact symbolic class of functions P(x) e^{-alpha |x|^2} where P is a
// polynomial with Multivector coefficients.  The class is closed under the
// Dirac operator D = sum_j e_j d/dx_j, half-time heat flow e^{Delta/2},
// coordinate multiplication, and linear combinations, so Hermite functions
// and their Cauchy-Kowalevski iterates never leave it.  Monomials are keyed
// by a multi-index packed 8 bits per axis into a uint64_t.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "weylcst/errors.hpp"
#include "weylcst/multivector.hpp"

namespace weylcst {

// Degree cap for user-facing construction: coefficients past total degree 64
// involve factorial scales that are meaningless in double precision.
inline constexpr int gp_degree_cap = 64;

using MultiIndex = std::vector<int>;  // length m, entries >= 0

namespace detail {

inline uint64_t pack_index(const MultiIndex& k, int m) {
    if (static_cast<int>(k.size()) != m)
        throw dimension_error("multi-index length does not match m");
    uint64_t key = 0;
    for (int a = 0; a < m; ++a) {
        if (k[a] < 0 || k[a] > 255) throw dimension_error("multi-index component out of range");
        key |= static_cast<uint64_t>(k[a]) << (8 * a);
    }
    return key;
}

inline MultiIndex unpack_index(uint64_t key, int m) {
    MultiIndex k(m);
    for (int a = 0; a < m; ++a) k[a] = static_cast<int>((key >> (8 * a)) & 0xff);
    return k;
}

inline int index_component(uint64_t key, int a) {
    return static_cast<int>((key >> (8 * a)) & 0xff);
}

inline int index_total_degree(uint64_t key, int m) {
    int d = 0;
    for (int a = 0; a < m; ++a) d += index_component(key, a);
    return d;
}

// key with component a shifted by delta; caller guarantees the result stays
// in [0, 255].
inline uint64_t index_shift(uint64_t key, int a, int delta) {
    return key + (static_cast<uint64_t>(delta) << (8 * a));
}

inline double double_factorial(int n) {  // (-1)!! = 0!! = 1
    double r = 1.0;
    for (int v = n; v > 1; v -= 2) r *= v;
    return r;
}

inline double binomial(int n, int j) {
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r = r * (n - j + i) / i;
    return r;
}

}  // namespace detail

class GaussianPolynomial {
public:
    GaussianPolynomial() = default;
    GaussianPolynomial(int m, double alpha) : m_(m), alpha_(alpha) {
        check_m(m);
        if (alpha < 0.0) throw dimension_error("Gaussian exponent alpha must be >= 0");
    }

    static GaussianPolynomial monomial(int m, double alpha, const MultiIndex& k,
                                       const Multivector& coeff) {
        GaussianPolynomial f(m, alpha);
        f.add_term(detail::pack_index(k, m), coeff);
        return f;
    }
    static GaussianPolynomial monomial(int m, double alpha, const MultiIndex& k,
                                       cplx scale = 1.0) {
        return monomial(m, alpha, k, Multivector::scalar(m, scale));
    }

    static GaussianPolynomial gaussian(int m, double alpha, cplx scale = 1.0) {
        return monomial(m, alpha, MultiIndex(m, 0), Multivector::scalar(m, scale));
    }

    int m() const { return m_; }
    double alpha() const { return alpha_; }
    const std::map<uint64_t, Multivector>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [key, c] : terms_) d = std::max(d, detail::index_total_degree(key, m_));
        return d;
    }

    // Accumulates coeff onto the monomial key, dropping the term if it
    // cancels to exactly zero (keeps monogenicity checks crisp).
    void add_term(uint64_t key, const Multivector& coeff) {
        auto [it, fresh] = terms_.try_emplace(key, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second.max_abs() == 0.0) terms_.erase(it);
        } else if (coeff.max_abs() == 0.0) {
            terms_.erase(it);
        }
    }

    void add_term(const MultiIndex& k, const Multivector& coeff) {
        add_term(detail::pack_index(k, m_), coeff);
    }

    Multivector eval(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != m_)
            throw dimension_error("evaluation point has wrong dimension");
        Multivector acc(m_);
        for (const auto& [key, c] : terms_) {
            double mono = 1.0;
            for (int a = 0; a < m_; ++a) {
                const int ka = detail::index_component(key, a);
                for (int t = 0; t < ka; ++t) mono *= x[a];
            }
            acc.axpy(mono, c);
        }
        double r2 = 0.0;
        for (double xa : x) r2 += xa * xa;
        acc *= std::exp(-alpha_ * r2);
        return acc;
    }

    GaussianPolynomial& operator+=(const GaussianPolynomial& rhs) {
        match_class(rhs);
        for (const auto& [key, c] : rhs.terms_) add_term(key, c);
        return *this;
    }
    GaussianPolynomial& operator-=(const GaussianPolynomial& rhs) {
        match_class(rhs);
        for (const auto& [key, c] : rhs.terms_) add_term(key, -c);
        return *this;
    }
    GaussianPolynomial& operator*=(cplx s) {
        if (s == cplx{0.0, 0.0}) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, c] : terms_) c *= s;
        return *this;
    }
    friend GaussianPolynomial operator+(GaussianPolynomial a, const GaussianPolynomial& b) {
        return a += b;
    }
    friend GaussianPolynomial operator-(GaussianPolynomial a, const GaussianPolynomial& b) {
        return a -= b;
    }
    friend GaussianPolynomial operator*(GaussianPolynomial a, cplx s) { return a *= s; }
    friend GaussianPolynomial operator*(cplx s, GaussianPolynomial a) { return a *= s; }

    // Accumulates scale * rhs; same-class requirement as operator+=.
    void axpy(cplx scale, const GaussianPolynomial& rhs) {
        match_class(rhs);
        if (scale == cplx{0.0, 0.0}) return;
        for (const auto& [key, c] : rhs.terms_) add_term(key, scale * c);
    }

    // Multiplication by the coordinate x_{a+1} (index shift, no blade action).
    GaussianPolynomial coordinate_mul(int a) const {
        if (a < 0 || a >= m_) throw dimension_error("coordinate index out of range");
        GaussianPolynomial out(m_, alpha_);
        for (const auto& [key, c] : terms_) out.add_term(detail::index_shift(key, a, +1), c);
        return out;
    }

    double max_coeff_abs() const {
        double r = 0.0;
        for (const auto& [key, c] : terms_) r = std::max(r, c.max_abs());
        return r;
    }

private:
    void match_class(const GaussianPolynomial& rhs) const {
        if (m_ != rhs.m_) throw dimension_error("gaussian polynomial dimension mismatch");
        if (alpha_ != rhs.alpha_)
            throw dimension_error("gaussian polynomial exponent mismatch (alpha differs)");
    }

    int m_ = 0;
    double alpha_ = 0.0;
    std::map<uint64_t, Multivector> terms_;
};

inline Multivector gp_eval(const GaussianPolynomial& f, const std::vector<double>& x) {
    return f.eval(x);
}

inline void check_degree_cap(const GaussianPolynomial& f, const char* op) {
    if (f.total_degree() > gp_degree_cap)
        throw dimension_error(std::string(op) + ": total degree " +
                              std::to_string(f.total_degree()) + " exceeds the cap of " +
                              std::to_string(gp_degree_cap));
}

// Dirac operator D f = sum_j e_j (d/dx_j P - 2 alpha x_j P) e^{-alpha|x|^2},
// with e_j acting on each coefficient by left Clifford multiplication.  No
// degree check here: series iterates legitimately climb one degree per
// application and are bounded by the series order cap instead.
inline GaussianPolynomial dirac_apply(const GaussianPolynomial& f) {
    const int m = f.m();
    const double alpha = f.alpha();
    GaussianPolynomial out(m, alpha);
    for (const auto& [key, c] : f.terms()) {
        for (int a = 0; a < m; ++a) {
            const Multivector ec = generator_mul_left(a, c);
            const int ka = detail::index_component(key, a);
            if (ka > 0)
                out.add_term(detail::index_shift(key, a, -1), static_cast<double>(ka) * ec);
            if (alpha != 0.0)
                out.add_term(detail::index_shift(key, a, +1), -2.0 * alpha * ec);
        }
    }
    return out;
}

// Symbolic Laplacian, used to exercise D^2 = -Delta; coefficients are not
// blade-multiplied (the Laplacian is scalar).
inline GaussianPolynomial laplacian_apply(const GaussianPolynomial& f) {
    const int m = f.m();
    const double alpha = f.alpha();
    GaussianPolynomial out(m, alpha);
    for (const auto& [key, c] : f.terms()) {
        for (int a = 0; a < m; ++a) {
            const int ka = detail::index_component(key, a);
            if (ka >= 2)
                out.add_term(detail::index_shift(key, a, -2),
                             static_cast<double>(ka) * (ka - 1) * c);
            if (alpha != 0.0) {
                out.add_term(key, -2.0 * alpha * (2.0 * ka + 1.0) * c);
                out.add_term(detail::index_shift(key, a, +2), 4.0 * alpha * alpha * c);
            }
        }
    }
    return out;
}

// Left multiplication by the one-vector x = sum_j x_j e_j: shifts each
// monomial up one degree per axis and blade-multiplies the coefficient.
inline GaussianPolynomial one_vector_mul_left(const GaussianPolynomial& f) {
    const int m = f.m();
    GaussianPolynomial out(m, f.alpha());
    for (const auto& [key, c] : f.terms()) {
        for (int a = 0; a < m; ++a)
            out.add_term(detail::index_shift(key, a, +1), generator_mul_left(a, c));
    }
    return out;
}

// Half-time heat flow: convolution with (2pi)^{-m/2} e^{-|x|^2/2}, computed
// per axis from Gaussian moments.  Completing the square in
// (2pi)^{-1/2} int e^{-(x-y)^2/2} y^n e^{-alpha y^2} dy  with  beta = 1+2alpha
// gives the exact per-axis map
//   x^n e^{-alpha x^2}  ->  e^{-alpha' x^2} sum_{j even <= n}
//       C(n,j) (j-1)!! beta^{-(n-j)-j/2-1/2} x^{n-j},    alpha' = alpha/beta.
// For alpha in {0, 1/4, 1/2} every factor is dyadic times a common
// beta^{-m/2}, which is why the Hermite heat images below come out
// coefficient-exact.
inline GaussianPolynomial heat_halftime(const GaussianPolynomial& f) {
    check_degree_cap(f, "heat_halftime");
    const int m = f.m();
    const double beta = 1.0 + 2.0 * f.alpha();
    const double inv_beta = 1.0 / beta;
    const double alpha_out = f.alpha() / beta;
    GaussianPolynomial out(m, alpha_out);

    auto ipow = [](double b, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };

    // Accumulate with the rational part of the weight only.  For beta a power
    // of two (the Hermite-function case alpha = 1/2) every factor below is an
    // exact dyadic, so contributions that cancel in exact arithmetic cancel
    // exactly here too; the common irrational beta^{-m/2} is applied once at
    // the end.
    for (const auto& [key, c] : f.terms()) {
        std::vector<int> j(m, 0);  // even decrements per axis
        while (true) {
            double w = 1.0;
            uint64_t target = key;
            for (int a = 0; a < m; ++a) {
                const int ka = detail::index_component(key, a);
                const int ja = j[a];
                w *= detail::binomial(ka, ja) * detail::double_factorial(ja - 1) *
                     ipow(inv_beta, (ka - ja) + ja / 2);
                target = detail::index_shift(target, a, -ja);
            }
            out.add_term(target, w * c);

            int a = 0;
            for (; a < m; ++a) {
                j[a] += 2;
                if (j[a] <= detail::index_component(key, a)) break;
                j[a] = 0;
            }
            if (a == m) break;
        }
    }
    // beta^{-m/2}, kept exact for even m.
    double scale = ipow(inv_beta, m / 2);
    if (m & 1) scale /= std::sqrt(beta);
    out *= scale;
    return out;
}

// Physicists' Hermite product polynomial H_k(x) = H_{k_1}(x_1)...H_{k_m}(x_m)
// via the recurrence H_{n+1} = 2x H_n - 2n H_{n-1}.
inline GaussianPolynomial hermite_poly(const MultiIndex& k) {
    const int m = static_cast<int>(k.size());
    check_m(m);
    int total = 0;
    for (int ka : k) {
        if (ka < 0) throw dimension_error("hermite_poly: negative index");
        total += ka;
    }
    if (total > gp_degree_cap)
        throw dimension_error("hermite_poly: total degree exceeds the cap of " +
                              std::to_string(gp_degree_cap));

    // 1-D coefficient arrays (degree-indexed) per requested order.
    auto hermite_coeffs = [](int n) {
        std::vector<double> prev{1.0};  // H_0
        if (n == 0) return prev;
        std::vector<double> cur{0.0, 2.0};  // H_1
        for (int v = 1; v < n; ++v) {
            std::vector<double> next(v + 2, 0.0);
            for (int d = 0; d <= v; ++d) next[d + 1] += 2.0 * cur[d];
            for (int d = 0; d < v; ++d) next[d] -= 2.0 * v * prev[d];
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    };

    std::vector<std::vector<double>> axis(m);
    for (int a = 0; a < m; ++a) axis[a] = hermite_coeffs(k[a]);

    GaussianPolynomial out(m, 0.0);
    std::vector<int> d(m, 0);
    while (true) {
        double coeff = 1.0;
        for (int a = 0; a < m; ++a) coeff *= axis[a][d[a]];
        if (coeff != 0.0) {
            MultiIndex idx(d.begin(), d.end());
            out.add_term(idx, Multivector::scalar(m, coeff));
        }
        int a = 0;
        for (; a < m; ++a) {
            if (++d[a] < static_cast<int>(axis[a].size())) break;
            d[a] = 0;
        }
        if (a == m) break;
    }
    return out;
}

// Hermite function phi_k = H_k(x) e^{-|x|^2/2}; squared L^2 norm is
// pi^{m/2} 2^{|k|} k!.
inline GaussianPolynomial phi_k(const MultiIndex& k) {
    GaussianPolynomial h = hermite_poly(k);
    GaussianPolynomial out(h.m(), 0.5);
    for (const auto& [key, c] : h.terms()) out.add_term(key, c);
    return out;
}

// L^2(R^m, dx) pairing of two class members via closed-form Gaussian moments
//   int x^n e^{-beta x^2} dx = 0 (n odd),  (n-1)!! (2 beta)^{-n/2} sqrt(pi/beta) (n even)
// applied per axis; Multivector coefficients combine through hermitian_inner
// (second argument conjugated).
inline cplx gp_l2_inner(const GaussianPolynomial& f, const GaussianPolynomial& g) {
    if (f.m() != g.m()) throw dimension_error("gp_l2_inner: dimension mismatch");
    check_degree_cap(f, "gp_l2_inner");
    check_degree_cap(g, "gp_l2_inner");
    if (f.is_zero() || g.is_zero()) return {0.0, 0.0};
    const double beta = f.alpha() + g.alpha();
    if (beta <= 0.0)
        throw io_error("gp_l2_inner: divergent integral (both exponents zero)");
    const int m = f.m();
    const double axis_base = std::sqrt(std::numbers::pi / beta);

    cplx acc{0.0, 0.0};
    for (const auto& [kf, cf] : f.terms()) {
        for (const auto& [kg, cg] : g.terms()) {
            double w = 1.0;
            bool odd = false;
            for (int a = 0; a < m; ++a) {
                const int n = detail::index_component(kf, a) + detail::index_component(kg, a);
                if (n & 1) {
                    odd = true;
                    break;
                }
                w *= detail::double_factorial(n - 1) * std::pow(2.0 * beta, -0.5 * n) * axis_base;
            }
            if (odd) continue;
            acc += w * hermitian_inner(cf, cg);
        }
    }
    return acc;
}

}  // namespace weylcst
