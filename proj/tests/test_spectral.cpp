// Momentum-space machinery: projectors, the Clifford exponential, the FFT
// pair, the discrete transform path, and the Weyl-equation residual.
#include <weylcst/spectral.hpp>
#include <weylcst/gaussian_poly.hpp>
#include <weylcst/verify.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace weylcst;

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double sym() { return 2.0 * uniform() - 1.0; }
    std::vector<double> vec(int m, double scale) {
        std::vector<double> p(static_cast<size_t>(m));
        for (double& v : p) v = scale * sym();
        return p;
    }
};

double dist(const Multivector& a, const Multivector& b) {
    Multivector d = a;
    d -= b;
    return d.max_abs();
}

Multivector unit_vector_mul(int m, const std::vector<double>& p, const Multivector& u) {
    return geometric_product(Multivector::one_vector(m, p), u);
}

}  // namespace

TEST_CASE("chi projectors: idempotent, complementary, eigenvalue +-1") {
    Rng rng(201);
    for (int m = 1; m <= 3; ++m) {
        for (int t = 0; t < 340; ++t) {  // > 1000 draws across dimensions
            std::vector<double> p = rng.vec(m, 2.0);
            double len = 0.0;
            for (double v : p) len += v * v;
            len = std::sqrt(len);
            if (len < 1e-3) continue;
            const auto [plus, minus] = chi_projectors(m, p);

            Multivector sum = plus;
            sum += minus;
            REQUIRE(dist(sum, Multivector::scalar(m, 1.0)) < 1e-12);
            REQUIRE(dist(geometric_product(plus, plus), plus) < 1e-12);
            REQUIRE(dist(geometric_product(minus, minus), minus) < 1e-12);
            REQUIRE(geometric_product(plus, minus).max_abs() < 1e-12);

            // i p/|p| chi_{+-} = +- chi_{+-}
            Multivector ip = unit_vector_mul(m, p, plus);
            ip *= cplx{0.0, 1.0 / len};
            REQUIRE(dist(ip, plus) < 1e-12);
            Multivector im = unit_vector_mul(m, p, minus);
            im *= cplx{0.0, 1.0 / len};
            Multivector neg = minus;
            neg *= cplx{-1.0, 0.0};
            REQUIRE(dist(im, neg) < 1e-12);
        }
    }
    REQUIRE_THROWS_AS(chi_projectors(2, std::vector<double>{0.0, 0.0}), dimension_error);
}

TEST_CASE("clifford exponential: closed form in one dimension") {
    // p = (w): e^{-i x0 w e1} = cosh(x0 w) - i sinh(x0 w) e1 (for w > 0,
    // |p| = w and p/|p| = e1).
    const double x0 = 0.7, w = 1.3;
    const Multivector E = clifford_exponential(1, x0, {w});
    REQUIRE(std::abs(E[0] - cplx{std::cosh(x0 * w), 0.0}) < 1e-14);
    REQUIRE(std::abs(E[1] - cplx{0.0, -std::sinh(x0 * w)}) < 1e-14);
}

TEST_CASE("clifford exponential: group law and unit determinant structure") {
    Rng rng(202);
    for (int m = 1; m <= 3; ++m) {
        for (int t = 0; t < 40; ++t) {
            const std::vector<double> p = rng.vec(m, 1.5);
            const double a = rng.sym(), b = rng.sym();
            // E(a) E(b) = E(a + b): both are exponentials of commuting arguments.
            const Multivector Ea = clifford_exponential(m, a, p);
            const Multivector Eb = clifford_exponential(m, b, p);
            const Multivector Eab = clifford_exponential(m, a + b, p);
            REQUIRE(dist(geometric_product(Ea, Eb), Eab) < 1e-12);
        }
    }
}

TEST_CASE("clifford exponential: small-argument branch is smooth") {
    // Near |x0 p| = 0 the sinhc series takes over; values must match the
    // first-order expansion 1 - i x0 p to the square of the argument.
    const double x0 = 1e-6;
    const std::vector<double> p{0.5, -0.25};
    const Multivector E = clifford_exponential(2, x0, p);
    REQUIRE(std::abs(E[0] - cplx{1.0, 0.0}) < 1e-12);
    REQUIRE(std::abs(E[1] - cplx{0.0, -x0 * 0.5}) < 1e-14);
    REQUIRE(std::abs(E[2] - cplx{0.0, x0 * 0.25}) < 1e-14);
}

TEST_CASE("clifford exponential satisfies d/dx0 E = -i p E by differences") {
    Rng rng(203);
    const double h = 1e-6;
    for (int m = 1; m <= 3; ++m) {
        for (int t = 0; t < 30; ++t) {
            const std::vector<double> p = rng.vec(m, 1.5);
            const double x0 = rng.sym();
            Multivector fd = clifford_exponential(m, x0 + h, p);
            fd -= clifford_exponential(m, x0 - h, p);
            fd *= cplx{1.0 / (2.0 * h), 0.0};
            Multivector rhs = unit_vector_mul(m, p, clifford_exponential(m, x0, p));
            rhs *= cplx{0.0, -1.0};
            REQUIRE(dist(fd, rhs) < 1e-7);
        }
    }
}

TEST_CASE("plane waves solve the Weyl equation pointwise") {
    Rng rng(204);
    const double h = 1e-4;
    for (int m = 1; m <= 2; ++m) {
        for (int t = 0; t < 20; ++t) {
            const std::vector<double> p = rng.vec(m, 1.5);
            const std::vector<double> x = rng.vec(m, 3.0);
            const double x0 = rng.sym();
            // d0 F by central difference
            Multivector d0 = plane_wave(m, x0 + h, x, p);
            d0 -= plane_wave(m, x0 - h, x, p);
            d0 *= cplx{1.0 / (2.0 * h), 0.0};
            // DF = sum_j e_j dF/dx_j by central differences
            Multivector DF(m);
            for (int a = 0; a < m; ++a) {
                std::vector<double> xp = x, xm = x;
                xp[static_cast<size_t>(a)] += h;
                xm[static_cast<size_t>(a)] -= h;
                Multivector diff = plane_wave(m, x0, xp, p);
                diff -= plane_wave(m, x0, xm, p);
                diff *= cplx{1.0 / (2.0 * h), 0.0};
                DF += generator_mul_left(a, diff);
            }
            d0 += DF;
            REQUIRE(d0.max_abs() < 4e-7);
        }
    }
}

TEST_CASE("fourier transform: round-trip identity on random fields") {
    Rng rng(205);
    for (int m = 1; m <= 2; ++m) {
        const GridSpec grid(m, 6.0, m == 1 ? 64 : 32);
        SampledField f(grid);
        for (size_t b = 0; b < f.blades(); ++b)
            for (size_t p = 0; p < f.points(); ++p)
                f.component(b)[p] = cplx{rng.sym(), rng.sym()};
        const SampledField back = fourier_inverse(fourier_forward(f));
        double worst = 0.0;
        for (size_t b = 0; b < f.blades(); ++b)
            for (size_t p = 0; p < f.points(); ++p)
                worst = std::max(worst, std::abs(back.component(b)[p] - f.component(b)[p]));
        REQUIRE(worst < 1e-12);
    }
}

TEST_CASE("fourier transform: the standard gaussian is self-dual") {
    const GridSpec grid(1, 10.0, 256);
    SampledField f(grid);
    for (int i = 0; i < grid.N; ++i) {
        const double x = grid.coordinate(i);
        f.component(0)[static_cast<size_t>(i)] = std::exp(-0.5 * x * x);
    }
    const SampledField fhat = fourier_forward(f);
    // Frequency p_n lives at wrapped index n; e^{-p^2/2} should appear there.
    double worst = 0.0;
    for (int n = 0; n < grid.N; ++n) {
        const double p = grid.frequency(n);
        worst = std::max(worst, std::abs(fhat.component(0)[static_cast<size_t>(n)] -
                                         cplx{std::exp(-0.5 * p * p), 0.0}));
    }
    REQUIRE(worst < 1e-8);
}

TEST_CASE("fourier transform is linear") {
    Rng rng(206);
    const GridSpec grid(1, 6.0, 64);
    SampledField f(grid), g(grid), sum(grid);
    const cplx a{1.25, -0.5};
    for (size_t p = 0; p < f.points(); ++p) {
        f.component(0)[p] = cplx{rng.sym(), rng.sym()};
        g.component(1)[p] = cplx{rng.sym(), rng.sym()};
        sum.component(0)[p] = a * f.component(0)[p];
        sum.component(1)[p] = g.component(1)[p];
    }
    const SampledField lhs = fourier_forward(sum);
    const SampledField ff = fourier_forward(f);
    const SampledField gg = fourier_forward(g);
    double worst = 0.0;
    for (size_t b = 0; b < lhs.blades(); ++b)
        for (size_t p = 0; p < lhs.points(); ++p)
            worst = std::max(worst, std::abs(lhs.component(b)[p] -
                                            (b == 0 ? a * ff.component(b)[p]
                                                    : gg.component(b)[p])));
    REQUIRE(worst < 1e-13);
}

TEST_CASE("discrete transform at x0 = 0 reduces to the half-time heat flow") {
    // On the interior half-box the periodization error sits far below 1e-8.
    for (int m = 1; m <= 2; ++m) {
        const GridSpec grid(m, 8.0, 128);
        MultiIndex k(static_cast<size_t>(m), 0);
        k[0] = 1;
        const SampledField f = sample_gp(phi_k(k), grid);
        const SpacetimeField F = cst_spectral(f, {0.0});
        const SampledField heat = sample_gp(heat_halftime(phi_k(k)), grid);
        REQUIRE(interior_deviation(F.slices[0], heat) < 1e-8);
        REQUIRE(F.warnings.empty());
    }
}

TEST_CASE("discrete transform: zero in, zero out") {
    const GridSpec grid(1, 8.0, 64);
    const SampledField zero(grid);
    const SpacetimeField F = cst_spectral(zero, {-0.5, 0.0, 0.5});
    for (const auto& s : F.slices) REQUIRE(s.max_abs() == 0.0);
}

TEST_CASE("discrete transform commutes with constant right multiplication") {
    // The multiplier acts by left Clifford multiplication in momentum space,
    // so right multiplication by a constant blade passes through.
    Rng rng(207);
    const GridSpec grid(1, 8.0, 64);
    SampledField f(grid);
    for (int i = 0; i < grid.N; ++i) {
        const double x = grid.coordinate(i);
        f.component(0)[static_cast<size_t>(i)] = std::exp(-0.4 * x * x) * (1.0 + 0.3 * x);
    }
    const Multivector e1 = Multivector::basis_blade(1, 1u);
    SampledField fe1(grid);
    for (size_t p = 0; p < f.points(); ++p)
        fe1.set_value(p, geometric_product(f.value(p), e1));
    const SpacetimeField a = cst_spectral(fe1, {0.4});
    const SpacetimeField b = cst_spectral(f, {0.4});
    double worst = 0.0;
    for (size_t p = 0; p < f.points(); ++p)
        worst = std::max(worst, dist(a.slices[0].value(p),
                                     geometric_product(b.slices[0].value(p), e1)));
    REQUIRE(worst < 1e-12);
}

TEST_CASE("discrete transform rejects NaN input and warns on hard cases") {
    const GridSpec grid(1, 8.0, 64);
    SampledField f(grid);
    f.component(0)[3] = cplx{std::nan(""), 0.0};
    REQUIRE_THROWS_AS(cst_spectral(f, {0.0}), io_error);

    // A field that does not decay at the box edge draws a warning.
    SampledField flat(grid);
    for (size_t p = 0; p < flat.points(); ++p) flat.component(0)[p] = 1.0;
    const SpacetimeField F = cst_spectral(flat, {0.0});
    REQUIRE_FALSE(F.warnings.empty());

    // |x0| beyond L/2 draws a warning even for a decaying field.
    SampledField g(grid);
    for (int i = 0; i < grid.N; ++i) {
        const double x = grid.coordinate(i);
        g.component(0)[static_cast<size_t>(i)] = std::exp(-0.5 * x * x);
    }
    const SpacetimeField G = cst_spectral(g, {5.0});
    REQUIRE_FALSE(G.warnings.empty());
}

TEST_CASE("weyl residual: exact on fields linear in all variables") {
    const GridSpec grid(1, 8.0, 16);
    SpacetimeField W;
    W.x0_values = {-0.5, 0.0, 0.5};
    for (double x0 : W.x0_values) {
        SampledField s(grid);
        for (int i = 0; i < grid.N; ++i) {
            Multivector v(1);
            v[0] = grid.coordinate(i);
            v[1] = -x0;
            s.set_value(static_cast<size_t>(i), v);
        }
        W.slices.push_back(std::move(s));
    }
    W.validate();
    REQUIRE(weyl_residual(W) < 1e-12);
}

TEST_CASE("weyl residual: flags structural misuse") {
    const GridSpec grid(1, 8.0, 16);
    SpacetimeField F;
    F.x0_values = {0.0, 0.5};
    F.slices.assign(2, SampledField(grid));
    REQUIRE_THROWS_AS(weyl_residual(F), dimension_error);

    SpacetimeField G;
    G.x0_values = {0.0, 0.1, 0.5};  // non-uniform
    G.slices.assign(3, SampledField(grid));
    REQUIRE_THROWS_AS(weyl_residual(G), dimension_error);
}

TEST_CASE("weyl residual detects a deliberately broken field") {
    // Flip the sign of the e1 component of the exact witness; the residual
    // must jump to order one.
    const GridSpec grid(1, 8.0, 16);
    SpacetimeField W;
    W.x0_values = {-0.5, 0.0, 0.5};
    for (double x0 : W.x0_values) {
        SampledField s(grid);
        for (int i = 0; i < grid.N; ++i) {
            Multivector v(1);
            v[0] = grid.coordinate(i);
            v[1] = +x0;  // wrong sign
            s.set_value(static_cast<size_t>(i), v);
        }
        W.slices.push_back(std::move(s));
    }
    W.validate();
    REQUIRE(weyl_residual(W) > 0.5);
}
