#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ldsym/density.hpp"
#include "ldsym/peaks.hpp"

namespace ldsym {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // interleaved, row-major

    std::array<std::uint8_t, 3> pixel(int x, int y) const {
        const std::size_t o = 3 * (static_cast<std::size_t>(y) * width + x);
        return {rgb[o], rgb[o + 1], rgb[o + 2]};
    }
};

/// Axis colours in rank order: red, yellow, green, blue, magenta.
inline constexpr std::array<std::array<std::uint8_t, 3>, 5> kAxisColors = {{
    {255, 0, 0}, {255, 255, 0}, {0, 255, 0}, {0, 0, 255}, {255, 0, 255},
}};

RgbImage load_rgb(const std::string& path);
void save_png(const RgbImage& image, const std::string& path);

/// Draws the first five axes as straight lines with square endpoint
/// markers. Throws Error(InvalidInput) when an endpoint lies outside the
/// image, which indicates detections made on a different image size.
RgbImage draw_axes(RgbImage image, const std::vector<SymmetryAxis>& axes);

/// Density grid as a colour-mapped panel (theta horizontal, rho vertical),
/// resized to the given height.
RgbImage density_heatmap(const DensityGrid& grid, int height);

RgbImage hconcat(const RgbImage& left, const RgbImage& right);

}  // namespace ldsym
