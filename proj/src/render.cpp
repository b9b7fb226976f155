#include "ldsym/render.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "ldsym/error.hpp"
#include "ldsym/io.hpp"

namespace ldsym {

namespace {

cv::Mat as_mat(RgbImage& image) { return {image.height, image.width, CV_8UC3, image.rgb.data()}; }

RgbImage from_mat(const cv::Mat& rgb) {
    RgbImage out{rgb.cols, rgb.rows, {}};
    out.rgb.resize(3 * static_cast<std::size_t>(rgb.cols) * rgb.rows);
    for (int y = 0; y < rgb.rows; ++y)
        std::copy_n(rgb.ptr<std::uint8_t>(y), 3 * rgb.cols, out.rgb.data() + 3 * static_cast<std::size_t>(y) * rgb.cols);
    return out;
}

}  // namespace

RgbImage load_rgb(const std::string& path) {
    cv::Mat img = cv::imread(path, cv::IMREAD_COLOR);
    if (img.empty()) throw Error(ErrorKind::InvalidInput, "cannot read image " + path);
    cv::cvtColor(img, img, cv::COLOR_BGR2RGB);
    return from_mat(img);
}

void save_png(const RgbImage& image, const std::string& path) {
    RgbImage copy = image;
    cv::Mat bgr;
    cv::cvtColor(as_mat(copy), bgr, cv::COLOR_RGB2BGR);
    std::vector<std::uint8_t> buffer;
    if (!cv::imencode(".png", bgr, buffer)) throw Error(ErrorKind::InvalidInput, "PNG encoding failed");
    atomic_write_file(path, {reinterpret_cast<const char*>(buffer.data()), buffer.size()});
}

RgbImage draw_axes(RgbImage image, const std::vector<SymmetryAxis>& axes) {
    const std::size_t count = std::min(axes.size(), kAxisColors.size());
    for (std::size_t n = 0; n < count; ++n) {
        for (Vec2 p : {axes[n].p1, axes[n].p2})
            if (p.x < -0.5 || p.y < -0.5 || p.x > image.width + 0.5 || p.y > image.height + 0.5)
                throw Error(ErrorKind::InvalidInput, "detection endpoint lies outside the image; "
                                                     "were the detections made on another image?");
    }
    cv::Mat canvas = as_mat(image);
    const int thickness = std::max(1, std::min(image.width, image.height) / 150);
    const int half = std::max(2, 2 * thickness);
    // Lowest rank is drawn last so the strongest axis stays on top.
    for (std::size_t n = count; n-- > 0;) {
        const auto& c = kAxisColors[n];
        const cv::Scalar color(c[0], c[1], c[2]);
        const cv::Point a(static_cast<int>(std::floor(axes[n].p1.x)), static_cast<int>(std::floor(axes[n].p1.y)));
        const cv::Point b(static_cast<int>(std::floor(axes[n].p2.x)), static_cast<int>(std::floor(axes[n].p2.y)));
        cv::line(canvas, a, b, color, thickness, cv::LINE_8);
        for (const cv::Point& p : {a, b})
            cv::rectangle(canvas, p - cv::Point(half, half), p + cv::Point(half, half), color, cv::FILLED);
    }
    return image;
}

RgbImage density_heatmap(const DensityGrid& grid, int height) {
    const auto& spec = grid.spec();
    cv::Mat gray(spec.n_rho, spec.n_theta, CV_8UC1);
    const double peak = grid.max_value();
    for (int i = 0; i < spec.n_rho; ++i)
        for (int j = 0; j < spec.n_theta; ++j)
            gray.at<std::uint8_t>(i, j) =
                peak > 0.0 ? static_cast<std::uint8_t>(std::lround(255.0 * grid.at(i, j) / peak)) : 0;
    cv::Mat colored;
    cv::applyColorMap(gray, colored, cv::COLORMAP_JET);
    cv::cvtColor(colored, colored, cv::COLOR_BGR2RGB);
    const int h = std::max(1, height);
    const int w = std::max(1, static_cast<int>(std::lround(static_cast<double>(spec.n_theta) * h / spec.n_rho)));
    cv::resize(colored, colored, cv::Size(w, h), 0, 0, cv::INTER_NEAREST);
    return from_mat(colored);
}

RgbImage hconcat(const RgbImage& left, const RgbImage& right) {
    if (left.height != right.height) throw Error(ErrorKind::InvalidInput, "panels differ in height");
    RgbImage out{left.width + right.width, left.height, {}};
    out.rgb.resize(3 * static_cast<std::size_t>(out.width) * out.height);
    for (int y = 0; y < out.height; ++y) {
        auto* row = out.rgb.data() + 3 * static_cast<std::size_t>(y) * out.width;
        std::copy_n(left.rgb.data() + 3 * static_cast<std::size_t>(y) * left.width, 3 * left.width, row);
        std::copy_n(right.rgb.data() + 3 * static_cast<std::size_t>(y) * right.width, 3 * right.width,
                    row + 3 * left.width);
    }
    return out;
}

}  // namespace ldsym
