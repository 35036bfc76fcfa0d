#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polyslice/errors.hpp"
#include "polyslice/psi.hpp"

using namespace polyslice;

TEST_CASE("Psi(2) = 1")
{
    const PsiValue pv = psi(2.0);
    CHECK(std::abs(pv.value - 1.0) <= 1e-6);
    CHECK(pv.error <= 1e-6);
}

TEST_CASE("Psi golden values (independent scipy panel integrator)")
{
    const struct {
        double s, value, tol;
    } golden[] = {
        {2.2, 0.9474452782456401, 1e-7},  // reference itself good to ~2e-9
        {3.0, 0.9059786449191808, 1e-7},
        {4.0, 0.9192407078118700, 1e-7},
        {8.0, 0.9583853030497544, 1e-7},
        {16.0, 0.9791725618672653, 1e-7},
        {40.0, 0.9916670256543558, 1e-7},
        {60.0, 0.9944445496367805, 1e-7},
        {200.0, 0.9983333361296990, 1e-7},
    };
    for (const auto& g : golden) {
        const PsiValue pv = psi(g.s);
        CHECK(std::abs(pv.value - g.value) <= pv.error + g.tol);
        CHECK(std::abs(pv.value - g.value) <= 2e-7);
    }
}

TEST_CASE("quantitative branch bounds from the kernel-power integral")
{
    const PsiValue p22 = psi(2.2);
    CHECK(p22.value <= 1.0 - (0.2 * 0.2) / 12.0 + 1e-6);

    const PsiValue p200 = psi(200.0);
    CHECK(p200.value <= 1.0 - 1.0 / (151.0 * 200.0) + 1e-6);
    CHECK(p200.value >= 0.9);

    // the supremum over s >= 2 is 1, approached again as s -> infinity
    for (double s : {2.5, 3.5, 6.0, 12.0, 30.0, 100.0, 1e4, 1e8}) {
        const PsiValue pv = psi(s);
        CHECK(pv.value <= 1.0 + pv.error);
        CHECK(pv.value > 0.85);
    }
    CHECK(psi(1e8).value > 1.0 - 1e-5);
}

TEST_CASE("domain and convergence refusals")
{
    CHECK_THROWS_AS(psi(4.0 / 3.0), DomainError);
    CHECK_THROWS_AS(psi(1.0), DomainError);
    CHECK_THROWS_AS(psi(0.5), DomainError);
    CHECK_THROWS_AS(psi(1.39), SlowConvergenceError);
    CHECK_THROWS_AS(psi(1.6), TolNotReachedError);  // in-domain but hopeless at 1e-7
}

TEST_CASE("halving the tolerance never increases the reported error")
{
    for (double s : {2.0, 2.7, 7.0}) {
        QuadratureConfig cfg = default_psi_config();
        cfg.abs_tol = 1e-4;
        double prev = psi(s, cfg).error;
        for (int step = 0; step < 8; ++step) {
            cfg.abs_tol *= 0.5;
            const double cur = psi(s, cfg).error;
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
    }
}
