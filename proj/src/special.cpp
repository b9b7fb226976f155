#include "ldsym/special.hpp"

#include <cmath>

#include "ldsym/geometry.hpp"

namespace ldsym {

// I0(x) = (1/2pi) * integral over the circle of exp(x cos phi). The
// trapezoidal rule with M nodes is exact up to 2 * sum_l I_{lM}(x) / I0(x),
// which falls below 1e-17 once M exceeds about sqrt(80 x); every summand of
// the scaled form lies in (0, 1], so nothing overflows or cancels.
double bessel_i0_scaled(double x) {
    x = std::abs(x);
    const int nodes = 48 + 10 * static_cast<int>(std::ceil(std::sqrt(x)));
    double sum = 0.0;
    for (int j = 0; j < nodes; ++j) sum += std::exp(x * (std::cos(2.0 * kPi * j / nodes) - 1.0));
    return sum / nodes;
}

double bessel_i0(double x) { return std::exp(std::abs(x)) * bessel_i0_scaled(x); }

}  // namespace ldsym
