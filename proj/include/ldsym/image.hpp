#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ldsym {

/// Row-major luminance image with intensities in [0, 1].
class GrayImage {
public:
    static constexpr int kMinSide = 8;

    GrayImage() = default;
    /// Throws Error(InvalidInput) on size or range violations.
    GrayImage(int width, int height, std::vector<double> intensities);

    /// Luminance 0.299 R + 0.587 G + 0.114 B of interleaved 8-bit RGB.
    static GrayImage from_rgb8(int width, int height, std::span<const std::uint8_t> rgb);
    static GrayImage from_gray8(int width, int height, std::span<const std::uint8_t> gray);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::span<const double> data() const noexcept { return data_; }

    /// Mirror about the vertical midline (x -> W - 1 - x).
    GrayImage mirrored_horizontally() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Reads a PNG/JPEG (8-bit gray or color) into luminance.
GrayImage load_image(const std::string& path);

}  // namespace ldsym
