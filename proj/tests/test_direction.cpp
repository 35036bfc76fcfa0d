#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polyslice/direction.hpp"
#include "polyslice/errors.hpp"
#include "polyslice/rng.hpp"

using namespace polyslice;

TEST_CASE("canonicalize examples")
{
    const Direction a = canonicalize({0.0, -1.0});
    CHECK(a.weights() == std::vector<double>{1.0, 0.0});

    const Direction b = canonicalize({3.0, 4.0});
    CHECK(b[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(b[1] == doctest::Approx(0.6).epsilon(1e-15));

    const Direction c = canonicalize({1.0, 1.0, 1.0});
    for (int i = 0; i < 3; ++i) CHECK(c[i] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("canonicalize error paths")
{
    CHECK_THROWS_AS(canonicalize({0.0, 0.0, 0.0}), ZeroVectorError);
    CHECK_THROWS_AS(canonicalize(std::vector<double>{}), ZeroVectorError);
    CHECK_THROWS_AS(canonicalize({1.0, std::nan("")}), NonFiniteError);
    CHECK_THROWS_AS(canonicalize({1.0, HUGE_VAL}), NonFiniteError);
}

TEST_CASE("canonical invariants on random inputs")
{
    rng::Stream st{42, 0, 7, 0};
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + trial % 12;
        std::vector<double> raw(n);
        for (int i = 0; i < n; i += 4) {
            auto z = st.next_normal4();
            for (int j = 0; j < 4 && i + j < n; ++j) raw[i + j] = 3.0 * z[j];
        }
        bool all_zero = true;
        for (double x : raw) all_zero = all_zero && x == 0.0;
        if (all_zero) continue;
        const Direction d = canonicalize(raw);
        CHECK(is_canonical(d.weights()));
        CHECK(d.nonzero_count() >= 1);
    }
}

TEST_CASE("distance and zero retention")
{
    const Direction a = canonicalize({1.0, 0.0, 0.0});
    const Direction b = canonicalize({1.0, 1.0, 0.0});
    CHECK(a.n() == 3);
    CHECK(a.nonzero_count() == 1);
    CHECK(b.nonzero_count() == 2);
    CHECK(distance(a, b) == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))));
    CHECK_THROWS_AS(distance(a, canonicalize({1.0, 1.0})), DimensionMismatchError);
}
