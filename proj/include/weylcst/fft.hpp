#pragma once

// Minimal in-place radix-2 complex FFT.  Grid sizes here are powers of two by
// construction (GridSpec invariant) and small (N <= 8192 per axis), so a
// bit-reversal Cooley-Tukey with precomputed twiddles is all that's needed;
// no external FFT dependency, and the phase/scale conventions stay fully in
// this codebase's hands.

#include <complex>
#include <numbers>
#include <vector>

#include "weylcst/errors.hpp"
#include "weylcst/multivector.hpp"

namespace weylcst {
namespace detail {

// sign = -1: X_k = sum_j x_j e^{-2 pi i jk/N}; sign = +1: conjugate kernel.
// No normalization either way.
inline void fft_pow2(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw dimension_error("fft: length must be a nonzero power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // Twiddles from direct trig per stage (a multiplicative recurrence drifts
    // past the 1e-12 round-trip budget at the larger grid sizes).
    std::vector<cplx> tw(n / 2);
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (size_t j = 0; j < len / 2; ++j) tw[j] = std::polar(1.0, ang * static_cast<double>(j));
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * tw[j];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

// Applies fft_pow2 along one axis of a row-major m-dimensional array of
// extent N per axis (axis 0 slowest).  Lines are gathered into a scratch
// buffer, transformed, and scattered back.
inline void fft_axis(std::vector<cplx>& data, int m, int N, int axis, int sign) {
    size_t stride = 1;
    for (int a = m - 1; a > axis; --a) stride *= static_cast<size_t>(N);
    const size_t line_span = stride * static_cast<size_t>(N);
    const size_t total = data.size();

    std::vector<cplx> line(static_cast<size_t>(N));
    for (size_t base = 0; base < total; base += line_span) {
        for (size_t off = 0; off < stride; ++off) {
            for (int i = 0; i < N; ++i) line[i] = data[base + off + stride * i];
            fft_pow2(line, sign);
            for (int i = 0; i < N; ++i) data[base + off + stride * i] = line[i];
        }
    }
}

}  // namespace detail
}  // namespace weylcst
