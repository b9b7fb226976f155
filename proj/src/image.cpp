#include "ldsym/image.hpp"

#include <algorithm>

#include <opencv2/imgcodecs.hpp>

#include "ldsym/error.hpp"

namespace ldsym {

GrayImage::GrayImage(int width, int height, std::vector<double> intensities)
    : width_(width), height_(height), data_(std::move(intensities)) {
    if (width < kMinSide || height < kMinSide)
        throw Error(ErrorKind::InvalidInput, "image must be at least 8x8 pixels, got " +
                                                 std::to_string(width) + "x" + std::to_string(height));
    if (data_.size() != static_cast<std::size_t>(width) * height)
        throw Error(ErrorKind::InvalidInput, "intensity buffer does not match image size");
    for (double v : data_)
        if (!(v >= 0.0 && v <= 1.0))
            throw Error(ErrorKind::InvalidInput, "intensity outside [0,1]");
}

GrayImage GrayImage::from_rgb8(int width, int height, std::span<const std::uint8_t> rgb) {
    if (width < 0 || height < 0 || rgb.size() != 3 * static_cast<std::size_t>(width) * height)
        throw Error(ErrorKind::InvalidInput, "RGB buffer does not match image size");
    std::vector<double> lum(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < lum.size(); ++i) {
        const double v = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] + 0.114 * rgb[3 * i + 2];
        lum[i] = std::min(1.0, v / 255.0);
    }
    return GrayImage(width, height, std::move(lum));
}

GrayImage GrayImage::from_gray8(int width, int height, std::span<const std::uint8_t> gray) {
    if (width < 0 || height < 0 || gray.size() != static_cast<std::size_t>(width) * height)
        throw Error(ErrorKind::InvalidInput, "gray buffer does not match image size");
    std::vector<double> lum(gray.size());
    for (std::size_t i = 0; i < lum.size(); ++i) lum[i] = gray[i] / 255.0;
    return GrayImage(width, height, std::move(lum));
}

GrayImage GrayImage::mirrored_horizontally() const {
    std::vector<double> out(data_.size());
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            out[static_cast<std::size_t>(y) * width_ + x] = at(width_ - 1 - x, y);
    return GrayImage(width_, height_, std::move(out));
}

GrayImage load_image(const std::string& path) {
    cv::Mat img;
    try {
        img = cv::imread(path, cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        throw Error(ErrorKind::InvalidInput, "cannot decode " + path + ": " + e.what());
    }
    if (img.empty()) throw Error(ErrorKind::InvalidInput, "cannot read image " + path);
    if (img.depth() != CV_8U)
        throw Error(ErrorKind::InvalidInput, path + ": only 8-bit images are supported");

    const int w = img.cols, h = img.rows;
    switch (img.channels()) {
        case 1: {
            cv::Mat c = img.isContinuous() ? img : img.clone();
            return GrayImage::from_gray8(w, h, {c.ptr<std::uint8_t>(), c.total()});
        }
        case 3:
        case 4: {
            // OpenCV decodes to BGR(A); reorder to RGB and drop alpha.
            std::vector<std::uint8_t> rgb(3 * static_cast<std::size_t>(w) * h);
            const int ch = img.channels();
            for (int y = 0; y < h; ++y) {
                const auto* row = img.ptr<std::uint8_t>(y);
                for (int x = 0; x < w; ++x) {
                    const std::size_t o = 3 * (static_cast<std::size_t>(y) * w + x);
                    rgb[o] = row[ch * x + 2];
                    rgb[o + 1] = row[ch * x + 1];
                    rgb[o + 2] = row[ch * x];
                }
            }
            return GrayImage::from_rgb8(w, h, rgb);
        }
        default:
            throw Error(ErrorKind::InvalidInput, path + ": unsupported channel count");
    }
}

}  // namespace ldsym
