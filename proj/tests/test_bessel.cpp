#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "polyslice/bessel.hpp"

using namespace polyslice;

TEST_CASE("j1 small-argument series values")
{
    CHECK(bessel::j1(0.0) == 0.0);
    // (t/2)(1 - t^2/8) truncation of the series at t = 1e-3
    const double t = 1e-3;
    const double expected = 5e-4 * (1.0 - t * t / 8.0);
    CHECK(std::abs(bessel::j1(t) - expected) <= 1e-16);
}

TEST_CASE("j1 and j0 match boost across the whole range")
{
    for (double x = 1e-8; x < 1.2e4; x *= 1.11) {
        const double amp = std::sqrt(2.0 / (M_PI * std::max(x, 0.5)));
        const double ref1 = boost::math::cyl_bessel_j(1, x);
        const double ref0 = boost::math::cyl_bessel_j(0, x);
        CHECK(std::abs(bessel::j1(x) - ref1) <= 1e-13 * std::max(std::abs(ref1), amp));
        CHECK(std::abs(bessel::j0(x) - ref0) <= 1e-13 * std::max(std::abs(ref0), amp));
    }
    CHECK(bessel::j1(-2.5) == -bessel::j1(2.5));
    CHECK(bessel::j0(-2.5) == bessel::j0(2.5));
}

TEST_CASE("first zero of J1")
{
    CHECK(std::abs(bessel::j1(3.8317059702)) <= 1e-9);
    CHECK(std::abs(bessel::kernel(3.8317059702)) <= 1e-9);
}

TEST_CASE("j1_zeros against boost, spacing, and sign alternation")
{
    const auto z = bessel::j1_zeros(300);
    REQUIRE(z.size() == 300);
    CHECK(z[0] == doctest::Approx(3.8317059702075123).epsilon(1e-12));
    CHECK(z[1] == doctest::Approx(7.0155866698156188).epsilon(1e-12));
    for (int m = 1; m <= 300; ++m)
        CHECK(std::abs(z[m - 1] - boost::math::cyl_bessel_j_zero(1.0, m)) <= 1e-10);
    for (int m = 1; m < 300; ++m) CHECK(z[m] > z[m - 1]);
    // consecutive gaps approach pi
    CHECK(std::abs((z[49] - z[48]) - M_PI) <= 0.01);
    // J1 alternates sign between consecutive zeros
    double prev_sign = 1.0;  // J1 > 0 on (0, z1)
    for (int m = 0; m + 1 < 40; ++m) {
        const double mid = 0.5 * (z[m] + z[m + 1]);
        const double s = bessel::j1(mid) > 0.0 ? 1.0 : -1.0;
        CHECK(s == -prev_sign);
        prev_sign = s;
    }
}

TEST_CASE("kernel basics and Taylor window")
{
    CHECK(bessel::kernel(0.0) == 1.0);
    for (double u = 1e-6; u < 2e5; u *= 1.03) CHECK(std::abs(bessel::kernel(u)) <= 1.0 + 1e-15);
    for (double u = 1e-3; u <= 0.5; u += 1e-3) {
        const double taylor = 1.0 - u * u / 8.0 + u * u * u * u / 192.0;
        // the 3e-16 floor is where both sides round to 1.0
        CHECK(std::abs(bessel::kernel(u) - taylor) <= std::pow(u, 6.0) + 3e-16);
    }
    // kernel_minus_one agrees with kernel - 1 where both are well-conditioned
    for (double u = 0.3; u < 3.0; u += 0.1)
        CHECK(bessel::kernel_minus_one(u) ==
              doctest::Approx(bessel::kernel(u) - 1.0).epsilon(1e-12));
}

TEST_CASE("tail envelope dominates |kernel| and uses the documented constant")
{
    CHECK(bessel::kEnvelopeConstant >= 2.0 * std::sqrt(2.0 / M_PI));
    CHECK(bessel::tail_envelope(100.0) == doctest::Approx(bessel::kEnvelopeConstant * 1e-3));
    CHECK(bessel::tail_envelope(0.5) == 1.0);
    // dense-grid validation; the first-lobe peak near u = 2.17 is the
    // binding point, so sample it finely
    for (double u = 0.01; u < 8.0; u += 1e-4)
        CHECK(bessel::tail_envelope(u) >= std::abs(bessel::kernel(u)));
    for (double u = 8.0; u < 1e5; u *= 1.001)
        CHECK(bessel::tail_envelope(u) >= std::abs(bessel::kernel(u)));
}

TEST_CASE("truncated Hankel kernel remainder constant")
{
    // Beyond x ~ 100 the reference kernel's own roundoff (~eps * x^-3/2)
    // swamps the x^-15/2 truncation term, so allow for it explicitly.
    double worst = 0.0;
    for (double x = bessel::kHankelXMin; x < 3000.0; x *= 1.0007) {
        const double err = std::abs(bessel::kernel(x) - bessel::kernel_hankel(x));
        const double roundoff = 1.6e-15 * std::pow(x, -1.5);
        CHECK(err <= bessel::kHankelRemainder * std::pow(x, -7.5) + roundoff);
        if (x < 60.0) worst = std::max(worst, err * std::pow(x, 7.5));
    }
    CHECK(worst >= 0.5);  // the constant is tight to within ~2x, not vacuous
}
