// Series extension in the time direction: construction, truncation control,
// agreement with the discrete transform path, and the x0-heat weights.
#include <weylcst/ck_series.hpp>
#include <weylcst/spectral.hpp>
#include <weylcst/serialize.hpp>
#include <weylcst/verify.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace weylcst;

namespace {

double max_coeff_dist(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    GaussianPolynomial d = a;
    d -= b;
    double worst = 0.0;
    for (const auto& [key, c] : d.terms()) worst = std::max(worst, c.max_abs());
    return worst;
}

}  // namespace

TEST_CASE("series of f = x terminates after two terms and evaluates exactly") {
    const GaussianPolynomial f = GaussianPolynomial::monomial(1, 0.0, MultiIndex{1});
    const CKSeries s = ck_extend(f, 5);
    // Powers beyond the first are identically zero; evaluation is x - x0 e1.
    REQUIRE(s.scaled_powers()[1].total_degree() == 0);
    REQUIRE(s.scaled_powers()[2].is_zero());
    for (const double x0 : {-1.5, 0.0, 0.25, 2.0}) {
        for (const double x : {-3.0, 0.5, 4.0}) {
            const Multivector v = s.eval(x0, {x});
            REQUIRE(std::abs(v[0] - cplx{x, 0.0}) == 0.0);
            REQUIRE(std::abs(v[1] - cplx{-x0, 0.0}) == 0.0);
        }
    }
}

TEST_CASE("restriction to x0 = 0 returns the base exactly") {
    const GaussianPolynomial h = phi_k(MultiIndex{2, 1});
    const CKSeries s = cst_analytic(h, 1e-10, SeriesBox{1.0, 5.0});
    REQUIRE(max_coeff_dist(s.collapse_at(0.0), heat_halftime(h)) == 0.0);
}

TEST_CASE("scaled powers advance by the dirac operator") {
    const CKSeries s = cst_analytic(phi_k(MultiIndex{2}), 1e-8, SeriesBox{1.0, 4.0});
    for (int j = 0; j + 1 <= s.order(); ++j) {
        GaussianPolynomial step = dirac_apply(s.scaled_powers()[static_cast<size_t>(j)]);
        step *= cplx{1.0 / (j + 1), 0.0};
        REQUIRE(max_coeff_dist(step, s.scaled_powers()[static_cast<size_t>(j + 1)]) == 0.0);
    }
}

TEST_CASE("series value of e^{-x^2/4} matches the discrete transform path") {
    // e^{-x^2/4} = 2^{1/2} * (heat image of phi_0), so its series extension
    // equals 2^{1/2} times the discrete transform of phi_0 on grid points.
    const GaussianPolynomial g = GaussianPolynomial::gaussian(1, 0.25);
    const CKSeries s = ck_extend(g, 1e-10, SeriesBox{1.0, 8.0});

    const GridSpec grid(1, 8.0, 128);
    const SampledField f0 = sample_gp(phi_k(MultiIndex{0}), grid);
    const SpacetimeField F = cst_spectral(f0, {0.5});
    const int i = 72;  // grid.coordinate(72) = 1.0
    REQUIRE(grid.coordinate(i) == 1.0);
    const Multivector via_series = s.eval(0.5, {1.0});
    Multivector via_fft = F.slices[0].value(static_cast<size_t>(i));
    via_fft *= cplx{std::sqrt(2.0), 0.0};
    Multivector d = via_series;
    d -= via_fft;
    REQUIRE(d.max_abs() < 1e-6);
}

TEST_CASE("transform series of phi_(1,1) matches the discrete path off-axis") {
    // Spacing 0.1 puts the probe point (0.5, -0.2) exactly on the grid.
    const GridSpec grid(2, 6.4, 128);
    const MultiIndex k{1, 1};
    const CKSeries s = cst_analytic(phi_k(k), 1e-10, SeriesBox{1.0, 6.4});
    const SampledField f = sample_gp(phi_k(k), grid);
    const SpacetimeField F = cst_spectral(f, {0.3});
    std::vector<int> idx{static_cast<int>(std::lround((0.5 + 6.4) / 0.1)),
                         static_cast<int>(std::lround((-0.2 + 6.4) / 0.1))};
    REQUIRE(grid.coordinate(idx[0]) == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(grid.coordinate(idx[1]) == Catch::Approx(-0.2).margin(1e-12));
    Multivector d = s.eval(0.3, {grid.coordinate(idx[0]), grid.coordinate(idx[1])});
    d -= F.slices[0].value(grid.flat_index(idx));
    REQUIRE(d.max_abs() < 1e-6);
}

TEST_CASE("tolerance-driven truncation stops once the tail is below tau") {
    const CKSeries s = cst_analytic(phi_k(MultiIndex{1}), 1e-10, SeriesBox{1.0, 4.0});
    REQUIRE(s.order() < ck_order_cap);
    REQUIRE(s.tau() == 1e-10);
    // Doubling the order at fixed tolerance must not move evaluations.
    const CKSeries longer = ck_extend(heat_halftime(phi_k(MultiIndex{1})), 2 * s.order());
    for (const double x0 : {-1.0, 0.5, 1.0}) {
        Multivector d = s.eval(x0, {2.0});
        d -= longer.eval(x0, {2.0});
        REQUIRE(d.max_abs() < 1e-10);
    }
}

TEST_CASE("an unreachable tolerance raises a truncation failure with diagnostics") {
    // A wide box with a large time extent keeps the tail above threshold
    // until the order cap; the error carries the achieved bound.
    const GaussianPolynomial h = phi_k(MultiIndex{5});
    bool caught = false;
    try {
        cst_analytic(h, 1e-300, SeriesBox{30.0, 30.0});
    } catch (const truncation_error& e) {
        caught = true;
        REQUIRE(e.order_reached == ck_order_cap);
        REQUIRE(e.achieved_bound > 1e-300);
    }
    REQUIRE(caught);
}

TEST_CASE("psi basis: scaled copy of the transform series and exact restriction") {
    const SeriesBox box{1.0, 6.0};
    const CKSeries psi0 = psi_basis(MultiIndex{0}, 1e-10, box);
    const CKSeries vphi0 = cst_analytic(phi_k(MultiIndex{0}), 1e-10, box);
    REQUIRE(psi0.order() == vphi0.order());
    const double s2 = std::sqrt(2.0);
    for (int j = 0; j <= psi0.order(); ++j) {
        GaussianPolynomial scaled = vphi0.scaled_powers()[static_cast<size_t>(j)];
        scaled *= cplx{s2, 0.0};
        REQUIRE(max_coeff_dist(psi0.scaled_powers()[static_cast<size_t>(j)], scaled) < 1e-15);
    }
    // psi_k at x0 = 0 is x^k e^{-|x|^2/4}.
    const CKSeries psi21 = psi_basis(MultiIndex{2, 1}, 1e-10, SeriesBox{1.0, 5.0});
    REQUIRE(max_coeff_dist(psi21.collapse_at(0.0),
                           GaussianPolynomial::monomial(2, 0.25, MultiIndex{2, 1})) == 0.0);
}

TEST_CASE("sampled series satisfies the Weyl equation to the difference floor") {
    const CKSeries s = cst_analytic(phi_k(MultiIndex{0}), 1e-10, SeriesBox{1.0, 8.0});
    const GridSpec grid(1, 8.0, 1024);
    const SpacetimeField F = sample_ck(s, {-1e-3, 0.0, 1e-3}, grid);
    REQUIRE(weyl_residual(F) < 1e-3);
}

TEST_CASE("x0 heat weights: closed forms and the inverse pair") {
    // 1 -> 1
    REQUIRE(neg_heat_x0_poly(X0Poly{1.0}) == X0Poly{1.0});
    // x0^2 -> x0^2 - 1
    REQUIRE(neg_heat_x0_poly(X0Poly{0.0, 0.0, 1.0}) == X0Poly{-1.0, 0.0, 1.0});
    // x0^4 -> x0^4 - 6 x0^2 + 3
    REQUIRE(neg_heat_x0_poly(X0Poly{0.0, 0.0, 0.0, 0.0, 1.0}) ==
            X0Poly{3.0, 0.0, -6.0, 0.0, 1.0});
    // Positive flow undoes the negative flow term-exactly on degrees <= 10.
    for (int n = 0; n <= 10; ++n) {
        X0Poly mono(static_cast<size_t>(n) + 1, 0.0);
        mono[static_cast<size_t>(n)] = 1.0;
        const X0Poly back = pos_heat_x0_poly(neg_heat_x0_poly(mono));
        for (size_t i = 0; i < back.size(); ++i)
            REQUIRE(back[i] == (i == static_cast<size_t>(n) ? 1.0 : 0.0));
    }
    // Monomial evaluation agrees with expanding the polynomial.
    const X0Poly h4 = pos_heat_x0_poly(X0Poly{0.0, 0.0, 0.0, 0.0, 1.0});
    const double x0 = 0.8;
    double direct = 0.0, p = 1.0;
    for (double c : h4) {
        direct += c * p;
        p *= x0;
    }
    REQUIRE(pos_heat_monomial_value(4, x0) == Catch::Approx(direct).epsilon(1e-15));
}

TEST_CASE("series JSON round-trip preserves every power") {
    const CKSeries s = cst_analytic(phi_k(MultiIndex{1}), 1e-8, SeriesBox{1.0, 4.0});
    const CKSeries back = ck_series_from_json(to_json(s));
    REQUIRE(back.order() == s.order());
    REQUIRE(back.tau() == s.tau());
    for (int j = 0; j <= s.order(); ++j)
        REQUIRE(max_coeff_dist(back.scaled_powers()[static_cast<size_t>(j)],
                               s.scaled_powers()[static_cast<size_t>(j)]) == 0.0);
}
