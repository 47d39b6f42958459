#pragma once

// Uniform-grid sampled fields.  A GridSpec describes the box [-L, L)^m with
// N points per axis at x_j = -L + j * 2L/N (periodic convention, so the DFT
// frequency lattice is p_n = (pi/L) * n~ with the signed index n~ = n for
// n < N/2 and n - N otherwise).  SampledField stores one complex array per
// blade (structure-of-arrays: the FFT sweeps and multiplier loops want
// contiguous per-component data); SpacetimeField stacks slices over x0.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "weylcst/errors.hpp"
#include "weylcst/multivector.hpp"

namespace weylcst {

struct GridSpec {
    int m = 0;
    double L = 0.0;
    int N = 0;  // points per axis, power of two

    GridSpec() = default;
    GridSpec(int m_, double L_, int N_) : m(m_), L(L_), N(N_) {
        check_m(m);
        if (L <= 0.0) throw dimension_error("grid half-width L must be positive");
        if (N < 8 || (N & (N - 1)) != 0)
            throw dimension_error("grid point count N must be a power of two >= 8");
    }

    double spacing() const { return 2.0 * L / N; }
    size_t total_points() const {
        size_t n = 1;
        for (int a = 0; a < m; ++a) n *= static_cast<size_t>(N);
        return n;
    }
    double coordinate(int i) const { return -L + i * spacing(); }
    // Signed frequency for wrapped index n in [0, N).
    double frequency(int n) const {
        const int signed_n = (n < N / 2) ? n : n - N;
        return signed_n * std::numbers::pi / L;
    }
    // Row-major flat index (axis 0 slowest, last axis contiguous).
    size_t flat_index(const std::vector<int>& idx) const {
        size_t r = 0;
        for (int a = 0; a < m; ++a) r = r * N + idx[a];
        return r;
    }
    bool operator==(const GridSpec& o) const { return m == o.m && L == o.L && N == o.N; }
};

// Default production grid: generous box, power-of-two resolution; m = 3 is
// capped to keep memory and FFT time desk-scale.
inline GridSpec default_grid(int m) {
    check_m(m);
    return GridSpec(m, 8.0, m <= 2 ? 128 : 64);
}

class SampledField {
public:
    SampledField() = default;
    explicit SampledField(const GridSpec& grid)
        : grid_(grid), comp_(static_cast<size_t>(1) << grid.m,
                             std::vector<cplx>(grid.total_points(), cplx{0.0, 0.0})) {}

    const GridSpec& grid() const { return grid_; }
    int m() const { return grid_.m; }
    size_t points() const { return grid_.total_points(); }
    size_t blades() const { return comp_.size(); }

    std::vector<cplx>& component(size_t blade) { return comp_[blade]; }
    const std::vector<cplx>& component(size_t blade) const { return comp_[blade]; }

    Multivector value(size_t point) const {
        Multivector u(grid_.m);
        for (size_t b = 0; b < comp_.size(); ++b) u[b] = comp_[b][point];
        return u;
    }
    void set_value(size_t point, const Multivector& u) {
        if (u.m() != grid_.m) throw dimension_error("sample dimension mismatch");
        for (size_t b = 0; b < comp_.size(); ++b) comp_[b][point] = u[b];
    }

    bool has_nan() const {
        for (const auto& comp : comp_)
            for (const cplx& z : comp)
                if (std::isnan(z.real()) || std::isnan(z.imag())) return true;
        return false;
    }

    // Largest |value| over the outermost grid layer (i_a in {0, N-1} for some
    // axis): the decay sentinel for the periodized transform.
    double boundary_max_abs() const {
        const int N = grid_.N;
        double worst = 0.0;
        std::vector<int> idx(grid_.m, 0);
        const size_t total = points();
        for (size_t flat = 0; flat < total; ++flat) {
            bool on_boundary = false;
            size_t rest = flat;
            for (int a = grid_.m - 1; a >= 0; --a) {
                const int ia = static_cast<int>(rest % N);
                rest /= N;
                if (ia == 0 || ia == N - 1) on_boundary = true;
            }
            if (!on_boundary) continue;
            double mag2 = 0.0;
            for (const auto& comp : comp_) mag2 += std::norm(comp[flat]);
            worst = std::max(worst, mag2);
        }
        return std::sqrt(worst);
    }

    double max_abs() const {
        double worst = 0.0;
        for (size_t p = 0; p < points(); ++p) {
            double mag2 = 0.0;
            for (const auto& comp : comp_) mag2 += std::norm(comp[p]);
            worst = std::max(worst, mag2);
        }
        return std::sqrt(worst);
    }

private:
    GridSpec grid_;
    std::vector<std::vector<cplx>> comp_;
};

struct SpacetimeField {
    std::vector<double> x0_values;  // strictly increasing
    std::vector<SampledField> slices;
    std::vector<std::string> warnings;

    void validate() const {
        if (x0_values.size() != slices.size())
            throw dimension_error("spacetime field: slice count does not match x0 list");
        for (size_t i = 0; i + 1 < x0_values.size(); ++i)
            if (!(x0_values[i] < x0_values[i + 1]))
                throw dimension_error("spacetime field: x0 values must be strictly increasing");
        for (size_t i = 1; i < slices.size(); ++i)
            if (!(slices[i].grid() == slices[0].grid()))
                throw dimension_error("spacetime field: slices disagree on the grid");
    }
};

}  // namespace weylcst
