#pragma once

// Dense elements of the complex Clifford algebra C_m with anticommuting
// generators e_1..e_m satisfying e_i e_j + e_j e_i = -2 delta_ij.  A basis
// blade e_A is indexed by the bitmask A of its generators (bit j <-> e_{j+1},
// masks ordered 0..2^m-1), so an element is a dense vector of 2^m complex
// coefficients.  One-vectors x = sum_j x_j e_j square to -|x|^2, which is the
// sign convention everything downstream (Dirac operator, projectors, plane
// waves) relies on.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "weylcst/errors.hpp"

namespace weylcst {

using cplx = std::complex<double>;

inline constexpr int max_m = 6;

inline int blade_count(int m) { return 1 << m; }

inline void check_m(int m) {
    if (m < 1 || m > max_m)
        throw dimension_error("algebra dimension m must be in 1.." +
                              std::to_string(max_m) + ", got " + std::to_string(m));
}

// Sign of the product e_A * e_B (the resulting blade is e_{A xor B}).
// Multiplying the generators of B into e_A in ascending order, each generator
// j hops over the generators of A above j (one transposition each, and the
// bits above j are never touched by earlier steps), then either contracts
// with its copy in A (e_j e_j = -1) or slots in.
inline int blade_product_sign(unsigned a, unsigned b) {
    int swaps = 0;
    for (unsigned rest = b; rest; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        swaps += std::popcount(a >> (j + 1));
    }
    swaps += std::popcount(a & b);
    return (swaps & 1) ? -1 : 1;
}

class Multivector {
public:
    Multivector() = default;  // empty placeholder; real elements carry m >= 1

    explicit Multivector(int m) : m_(m) {
        check_m(m);
        c_.assign(static_cast<size_t>(1) << m, cplx{0.0, 0.0});
    }

    static Multivector scalar(int m, cplx value) {
        Multivector u(m);
        u.c_[0] = value;
        return u;
    }

    static Multivector basis_blade(int m, unsigned mask, cplx coeff = 1.0) {
        Multivector u(m);
        if (mask >= u.c_.size())
            throw dimension_error("blade mask " + std::to_string(mask) +
                                  " out of range for m=" + std::to_string(m));
        u.c_[mask] = coeff;
        return u;
    }

    // Embeds a coordinate vector as the one-vector sum_j x_j e_j.
    static Multivector one_vector(int m, const std::vector<double>& x) {
        std::vector<cplx> xc(x.begin(), x.end());
        return one_vector(m, xc);
    }

    static Multivector one_vector(int m, const std::vector<cplx>& x) {
        Multivector u(m);
        if (static_cast<int>(x.size()) != m)
            throw dimension_error("one_vector needs exactly m components");
        for (int j = 0; j < m; ++j) u.c_[static_cast<size_t>(1) << j] = x[j];
        return u;
    }

    int m() const { return m_; }
    size_t size() const { return c_.size(); }
    bool empty() const { return m_ == 0; }

    cplx& operator[](size_t mask) { return c_[mask]; }
    const cplx& operator[](size_t mask) const { return c_[mask]; }

    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }

    Multivector& operator+=(const Multivector& rhs) {
        match(rhs);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
        return *this;
    }
    Multivector& operator-=(const Multivector& rhs) {
        match(rhs);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
        return *this;
    }
    Multivector& operator*=(cplx s) {
        for (auto& z : c_) z *= s;
        return *this;
    }

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(Multivector a, cplx s) { return a *= s; }
    friend Multivector operator*(cplx s, Multivector a) { return a *= s; }
    friend Multivector operator-(Multivector a) { return a *= cplx{-1.0, 0.0}; }

    // Accumulates scale * rhs without allocating; the workhorse of the series
    // collapse loops.
    void axpy(cplx scale, const Multivector& rhs) {
        match(rhs);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += scale * rhs.c_[i];
    }

    double max_abs() const {
        double r = 0.0;
        for (const auto& z : c_) r = std::max(r, std::abs(z));
        return r;
    }

private:
    void match(const Multivector& rhs) const {
        if (m_ != rhs.m_)
            throw dimension_error("multivector dimension mismatch: m=" + std::to_string(m_) +
                                  " vs m=" + std::to_string(rhs.m_));
    }

    int m_ = 0;
    std::vector<cplx> c_;
};

// Full geometric product; O(4^m) blade pairs, plenty for m <= 6.
inline Multivector geometric_product(const Multivector& a, const Multivector& b) {
    if (a.m() != b.m())
        throw dimension_error("geometric_product: operands have different m");
    Multivector out(a.m());
    const size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
        const cplx ai = a[i];
        if (ai == cplx{0.0, 0.0}) continue;
        for (size_t j = 0; j < n; ++j) {
            const cplx bj = b[j];
            if (bj == cplx{0.0, 0.0}) continue;
            const int s = blade_product_sign(static_cast<unsigned>(i), static_cast<unsigned>(j));
            out[i ^ j] += static_cast<double>(s) * ai * bj;
        }
    }
    return out;
}

inline Multivector operator*(const Multivector& a, const Multivector& b) {
    return geometric_product(a, b);
}

// Left multiplication by the generator e_{j+1} (0-based j), used pervasively
// by the Dirac operator; cheaper than a full product and allocation-free via
// the _into variant.
inline void generator_mul_left_into(int j, const Multivector& u, Multivector& out) {
    const unsigned g = 1u << j;
    const size_t n = u.size();
    for (size_t d = 0; d < n; ++d) {
        const int s = blade_product_sign(g, static_cast<unsigned>(d));
        out[d ^ g] += static_cast<double>(s) * u[d];
    }
}

inline Multivector generator_mul_left(int j, const Multivector& u) {
    if (j < 0 || j >= u.m())
        throw dimension_error("generator index out of range");
    Multivector out(u.m());
    generator_mul_left_into(j, u, out);
    return out;
}

// Hermitian inner product (u, v) = sum_A u_A conj(v_A): linear in the first
// slot, conjugate-linear in the second.  Under it, left multiplication by a
// real one-vector p is skew: (p u, v) = -(u, p v).
inline cplx hermitian_inner(const Multivector& u, const Multivector& v) {
    if (u.m() != v.m())
        throw dimension_error("hermitian_inner: operands have different m");
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < u.size(); ++i) acc += u[i] * std::conj(v[i]);
    return acc;
}

inline double norm(const Multivector& u) {
    double acc = 0.0;
    for (size_t i = 0; i < u.size(); ++i) acc += std::norm(u[i]);
    return std::sqrt(acc);
}

}  // namespace weylcst
