#include <cmath>

#include "doctest.h"
#include "ldsym/density.hpp"
#include "ldsym/special.hpp"
#include "oracles.hpp"

using namespace ldsym;
using ldsym::testing::bessel_i0_series;

TEST_CASE("I0 at the tabulated points") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == doctest::Approx(1.26606588).epsilon(1e-8));
    // Series oracle, 30 terms, agrees with the tabulated value at k = 1.
    CHECK(static_cast<double>(ldsym::testing::bessel_i0_truncated(1.0L, 30)) ==
          doctest::Approx(1.2660658777520082).epsilon(1e-15));
}

TEST_CASE("I0 matches the power series across the supported range") {
    for (double k : {0.0, 0.1, 0.5, 1.0, 2.5, 5.0, 10.0, 15.0, 40.0, 100.0, 250.0, 500.0}) {
        const double oracle = static_cast<double>(bessel_i0_series(k));
        CHECK(std::abs(bessel_i0(k) / oracle - 1.0) < 1e-12);
    }
}

TEST_CASE("I0 agrees with the standard library") {
    for (double k = 0.0; k <= 500.0; k += 3.7)
        CHECK(std::abs(bessel_i0(k) / std::cyl_bessel_i(0.0, k) - 1.0) < 1e-12);
}

TEST_CASE("I0 at k = 40 sits inside the asymptotic sandwich") {
    const double leading = std::exp(40.0) / std::sqrt(80.0 * kPi);
    const double value = bessel_i0(40.0);
    CHECK(value > 0.99 * leading);
    CHECK(value < 1.01 * leading);
}

TEST_CASE("scaled I0 stays finite where I0 itself overflows") {
    const double scaled = bessel_i0_scaled(2000.0);
    CHECK(std::isfinite(scaled));
    CHECK(scaled == doctest::Approx(1.0 / std::sqrt(2 * kPi * 2000.0)).epsilon(1e-4));
    CHECK(bessel_i0_scaled(-3.0) == bessel_i0_scaled(3.0));
}
