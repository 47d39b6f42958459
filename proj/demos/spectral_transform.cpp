// End-to-end run of the FFT path: sample a Hermite-family function on the
// default grid, apply the transform over a narrow band of x0 values, and
// confirm the output solves the Weyl equation (d/dx0 + D)F = 0 by central
// finite differences.

#include <cstdio>
#include <vector>

#include <weylcst/weylcst.hpp>

using namespace weylcst;

int main() {
    // A fine one-dimensional grid: the Weyl-residual probe below differences
    // the samples directly, so its error scales with the spacing squared.
    const GridSpec grid(1, 8.0, 1024);
    std::printf("grid: m=%d, box [-%g, %g], N=%d\n", grid.m, grid.L, grid.L, grid.N);

    const SampledField f = sample_gp(phi_k(MultiIndex{2}), grid);
    std::vector<double> x0s;
    for (int t = -2; t <= 2; ++t) x0s.push_back(1e-3 * t);

    const SpacetimeField F = cst_spectral(f, x0s);
    for (const auto& w : F.warnings) std::printf("warning: %s\n", w.c_str());

    std::printf("\ntransform of phi_2 along the x0 axis (values at x = 2):\n");
    const size_t probe = static_cast<size_t>((5 * grid.N) / 8);
    for (size_t t = 0; t < F.x0_values.size(); ++t) {
        const Multivector u = F.slices[t].value(probe);
        std::printf("  x0 = %+8.1e   scalar %+12.9f %+12.9fi   e1 %+12.9f %+12.9fi\n",
                    F.x0_values[t], u[0].real(), u[0].imag(), u[1].real(), u[1].imag());
    }

    std::printf("\nfinite-difference Weyl residual over interior points: %.3e\n",
                weyl_residual(F));
    return 0;
}
