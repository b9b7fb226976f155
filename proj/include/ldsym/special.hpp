#pragma once

namespace ldsym {

/// exp(-x) * I0(x) for x >= 0; finite for every finite x.
double bessel_i0_scaled(double x);

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

}  // namespace ldsym
