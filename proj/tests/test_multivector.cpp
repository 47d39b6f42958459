// Clifford algebra layer: generator relations, product structure, the
// Hermitian inner product, and JSON round-trips.
#include <weylcst/multivector.hpp>
#include <weylcst/serialize.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace weylcst;

namespace {

// Deterministic uniform doubles in [-1, 1) straight from the engine bits.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double sym() { return 2.0 * uniform() - 1.0; }
    cplx coeff() { return cplx{sym(), sym()}; }
    Multivector multivector(int m) {
        Multivector u(m);
        for (size_t b = 0; b < u.size(); ++b) u[b] = coeff();
        return u;
    }
    std::vector<double> real_vector(int m) {
        std::vector<double> x(static_cast<size_t>(m));
        for (double& v : x) v = sym();
        return x;
    }
};

double dist(const Multivector& a, const Multivector& b) {
    Multivector d = a;
    d -= b;
    return d.max_abs();
}

}  // namespace

TEST_CASE("generator relations e_i e_j + e_j e_i = -2 delta_ij, all dimensions") {
    for (int m = 1; m <= max_m; ++m) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                const Multivector ei = Multivector::basis_blade(m, 1u << i);
                const Multivector ej = Multivector::basis_blade(m, 1u << j);
                Multivector anti = geometric_product(ei, ej);
                anti += geometric_product(ej, ei);
                const Multivector expected =
                    (i == j) ? Multivector::scalar(m, -2.0) : Multivector(m);
                INFO("m=" << m << " i=" << i << " j=" << j);
                REQUIRE(dist(anti, expected) == 0.0);
            }
        }
    }
}

TEST_CASE("basis blade products carry the expected signs") {
    const int m = 3;
    const auto blade = [&](unsigned mask, double c = 1.0) {
        return Multivector::basis_blade(m, mask, c);
    };
    // e1 e2 = e12, e2 e1 = -e12
    REQUIRE(dist(geometric_product(blade(1u), blade(2u)), blade(3u)) == 0.0);
    REQUIRE(dist(geometric_product(blade(2u), blade(1u)), blade(3u, -1.0)) == 0.0);
    // e12 e12 = -1, e12 e3 = e123
    REQUIRE(dist(geometric_product(blade(3u), blade(3u)), Multivector::scalar(m, -1.0)) == 0.0);
    REQUIRE(dist(geometric_product(blade(3u), blade(4u)), blade(7u)) == 0.0);
    // e123 e123 = +1 for signature (-1)^{k(k+1)/2} with k = 3
    REQUIRE(dist(geometric_product(blade(7u), blade(7u)), Multivector::scalar(m, 1.0)) == 0.0);
}

TEST_CASE("geometric product is associative and bilinear") {
    Rng rng(911);
    for (int m = 1; m <= max_m; ++m) {
        const int reps = (m <= 3) ? 300 : 60;  // 1000+ triples across dimensions
        for (int t = 0; t < reps; ++t) {
            const Multivector u = rng.multivector(m);
            const Multivector v = rng.multivector(m);
            const Multivector w = rng.multivector(m);
            const Multivector left = geometric_product(geometric_product(u, v), w);
            const Multivector right = geometric_product(u, geometric_product(v, w));
            REQUIRE(dist(left, right) < 1e-12);

            // (u + v) w = u w + v w
            Multivector sum = u;
            sum += v;
            Multivector rhs = geometric_product(u, w);
            rhs += geometric_product(v, w);
            REQUIRE(dist(geometric_product(sum, w), rhs) < 1e-13);
        }
    }
}

TEST_CASE("left generator multiplication matches the full product") {
    Rng rng(912);
    for (int m = 1; m <= max_m; ++m) {
        for (int t = 0; t < 20; ++t) {
            const Multivector u = rng.multivector(m);
            for (int j = 0; j < m; ++j) {
                const Multivector full =
                    geometric_product(Multivector::basis_blade(m, 1u << j), u);
                REQUIRE(dist(generator_mul_left(j, u), full) == 0.0);
            }
        }
    }
}

TEST_CASE("a real vector squares to minus its squared length") {
    Rng rng(913);
    for (int m = 1; m <= max_m; ++m) {
        for (int t = 0; t < 50; ++t) {
            const std::vector<double> x = rng.real_vector(m);
            double len2 = 0.0;
            for (double v : x) len2 += v * v;
            const Multivector xv = Multivector::one_vector(m, x);
            REQUIRE(dist(geometric_product(xv, xv), Multivector::scalar(m, -len2)) < 1e-15);
        }
    }
}

TEST_CASE("hermitian inner product: conjugation slot, positivity, symmetry") {
    Rng rng(914);
    const int m = 3;
    const Multivector u = rng.multivector(m);
    const Multivector v = rng.multivector(m);

    // (u, v) = conj((v, u))
    REQUIRE(std::abs(hermitian_inner(u, v) - std::conj(hermitian_inner(v, u))) < 1e-15);

    // Linear in the first slot, conjugate-linear in the second.
    const cplx i{0.0, 1.0};
    Multivector iu = u;
    iu *= i;
    Multivector iv = v;
    iv *= i;
    REQUIRE(std::abs(hermitian_inner(iu, v) - i * hermitian_inner(u, v)) < 1e-15);
    REQUIRE(std::abs(hermitian_inner(u, iv) + i * hermitian_inner(u, v)) < 1e-15);

    // (u, u) = sum of squared moduli.
    double s = 0.0;
    for (size_t b = 0; b < u.size(); ++b) s += std::norm(u[b]);
    REQUIRE(std::abs(hermitian_inner(u, u) - cplx{s, 0.0}) < 1e-14);
    REQUIRE(norm(u) == Catch::Approx(std::sqrt(s)).margin(1e-14));
}

TEST_CASE("left multiplication by a real vector is anti-self-adjoint") {
    Rng rng(915);
    for (int m = 1; m <= max_m; ++m) {
        for (int t = 0; t < 30; ++t) {
            const Multivector u = rng.multivector(m);
            const Multivector v = rng.multivector(m);
            const Multivector p = Multivector::one_vector(m, rng.real_vector(m));
            const cplx lhs = hermitian_inner(geometric_product(p, u), v);
            const cplx rhs = -hermitian_inner(u, geometric_product(p, v));
            REQUIRE(std::abs(lhs - rhs) < 1e-13);
        }
    }
}

TEST_CASE("blade shift of the inner product follows the sign table") {
    // <U e_A, W e_A> = <U, W> for any blade A (right multiplication by a unit
    // blade permutes components with unit signs).
    Rng rng(916);
    const int m = 3;
    const Multivector u = rng.multivector(m);
    const Multivector w = rng.multivector(m);
    for (unsigned A = 0; A < 8u; ++A) {
        const Multivector eA = Multivector::basis_blade(m, A);
        const cplx lhs = hermitian_inner(geometric_product(u, eA), geometric_product(w, eA));
        REQUIRE(std::abs(lhs - hermitian_inner(u, w)) < 1e-14);
    }
}

TEST_CASE("dimension guards") {
    REQUIRE_THROWS_AS(check_m(0), dimension_error);
    REQUIRE_THROWS_AS(check_m(max_m + 1), dimension_error);
    REQUIRE_THROWS_AS(Multivector(7), dimension_error);
    const Multivector a(2);
    const Multivector b(3);
    REQUIRE_THROWS_AS(geometric_product(a, b), dimension_error);
    REQUIRE_THROWS_AS(hermitian_inner(a, b), dimension_error);
}

TEST_CASE("multivector JSON round-trip is exact") {
    Rng rng(917);
    for (int m = 1; m <= max_m; ++m) {
        const Multivector u = rng.multivector(m);
        const Multivector back = multivector_from_json(to_json(u));
        REQUIRE(back.m() == m);
        REQUIRE(dist(u, back) == 0.0);
    }
    // Malformed payloads are reported as I/O errors naming the field.
    REQUIRE_THROWS_AS(multivector_from_json(json{{"coeffs", json::array()}}), io_error);
    REQUIRE_THROWS_AS(multivector_from_json(json{{"m", 2}}), io_error);
}
