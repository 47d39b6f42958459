// The monogenic basis at a glance: extend the Hermite family to solutions of
// the Weyl equation, integrate all pairs under the Gaussian spacetime
// measure, and print the resulting Gram matrix next to its closed-form
// diagonal 2^m pi^{m/2} 2^k k!.

#include <cstdio>
#include <vector>

#include <weylcst/weylcst.hpp>

using namespace weylcst;

int main() {
    const DmuQuadrature q;
    const GramResult g = gram_suite(1, 2, q);

    std::printf("Gram matrix (real parts; basis = psi_k times blade, k <= 2):\n");
    for (const auto& row : g.matrix) {
        for (const cplx& z : row) std::printf(" %12.6f", z.real());
        std::printf("\n");
    }

    std::printf("\nchecks:\n");
    for (const auto& c : g.report.checks)
        std::printf("  [%s] %-55s computed %.6e  reference %.6e\n", c.pass ? "ok" : "FAIL",
                    c.name.c_str(), c.computed, c.reference);
    std::printf("\nall pass: %s\n", g.report.all_pass() ? "yes" : "no");
    return g.report.all_pass() ? 0 : 1;
}
