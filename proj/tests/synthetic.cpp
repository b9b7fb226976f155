#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace ldsym::testing {

GrayImage random_texture(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> acc(static_cast<std::size_t>(width) * height, 0.0);
    double amplitude = 1.0, total = 0.0;
    for (int cell = 32; cell >= 2; cell /= 2) {
        const int gw = width / cell + 2, gh = height / cell + 2;
        std::vector<double> lattice(static_cast<std::size_t>(gw) * gh);
        for (auto& v : lattice) v = uni(rng);
        for (int y = 0; y < height; ++y) {
            const double fy = static_cast<double>(y) / cell;
            const int y0 = static_cast<int>(fy);
            const double ty = fy - y0;
            for (int x = 0; x < width; ++x) {
                const double fx = static_cast<double>(x) / cell;
                const int x0 = static_cast<int>(fx);
                const double tx = fx - x0;
                auto at = [&](int gx, int gy) { return lattice[static_cast<std::size_t>(gy) * gw + gx]; };
                const double top = at(x0, y0) * (1 - tx) + at(x0 + 1, y0) * tx;
                const double bottom = at(x0, y0 + 1) * (1 - tx) + at(x0 + 1, y0 + 1) * tx;
                acc[static_cast<std::size_t>(y) * width + x] += amplitude * (top * (1 - ty) + bottom * ty);
            }
        }
        total += amplitude;
        amplitude *= 0.7;
    }
    const auto [lo, hi] = std::minmax_element(acc.begin(), acc.end());
    const double low = *lo, span = std::max(*hi - *lo, 1e-12);
    for (auto& v : acc) v = std::clamp((v - low) / span, 0.0, 1.0);
    (void)total;
    return GrayImage(width, height, std::move(acc));
}

GrayImage mirrored_texture(int width, int height, std::uint64_t seed) {
    const GrayImage base = random_texture(width, height, seed);
    std::vector<double> out(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const int src = x < (width + 1) / 2 ? x : width - 1 - x;
            out[static_cast<std::size_t>(y) * width + x] = base.at(src, y);
        }
    return GrayImage(width, height, std::move(out));
}

GrayImage fourfold_texture(int width, int height, std::uint64_t seed) {
    const GrayImage base = random_texture(width, height, seed);
    std::vector<double> out(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const int sx = x < (width + 1) / 2 ? x : width - 1 - x;
            const int sy = y < (height + 1) / 2 ? y : height - 1 - y;
            out[static_cast<std::size_t>(y) * width + x] = base.at(sx, sy);
        }
    return GrayImage(width, height, std::move(out));
}

GrayImage vertical_step(int width, int height, int edge_x) {
    std::vector<double> out(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) out[static_cast<std::size_t>(y) * width + x] = x < edge_x ? 0.0 : 1.0;
    return GrayImage(width, height, std::move(out));
}

GrayImage constant_image(int width, int height, double value) {
    return GrayImage(width, height, std::vector<double>(static_cast<std::size_t>(width) * height, value));
}

}  // namespace ldsym::testing
