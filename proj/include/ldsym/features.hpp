#pragma once

#include <complex>
#include <vector>

#include "ldsym/geometry.hpp"
#include "ldsym/image.hpp"

namespace ldsym {

struct FilterBankConfig {
    int num_scales = 4;
    int num_orientations = 8;
    double base_wavelength = 4.0;  // pixels; doubles with every scale
    int grid_stride = 0;           // pixels; 0 uses each scale's wavelength

    void validate() const;
    double wavelength(int scale) const;
    int stride(int scale) const;
};

/// One complex Morlet filter sampled on the pixel lattice. Tap (u, v) sits
/// at offset (u - radius - phase.x, v - radius - phase.y) from the filter
/// centre; `size` is 2*radius+1, plus one when the phase is fractional.
struct MorletFilter {
    int scale = 0;
    int orientation = 0;
    double wavelength = 0.0;
    double sigma = 0.0;
    double angle = 0.0;  // direction of the wave vector, [0, pi)
    int radius = 0;
    int size_x = 0;
    int size_y = 0;
    std::vector<std::complex<double>> taps;  // row-major, size_y rows

    std::complex<double> tap(int u, int v) const { return taps[static_cast<std::size_t>(v) * size_x + u]; }
};

struct FilterBank {
    FilterBankConfig config;
    Vec2 phase;
    std::vector<MorletFilter> filters;  // scale-major, then orientation

    const MorletFilter& at(int scale, int orientation) const {
        return filters[static_cast<std::size_t>(scale) * config.num_orientations + orientation];
    }
};

/// Builds the zero-mean, unit-L2 Morlet bank. `phase` in [0,1)^2 is the
/// sub-pixel offset of the filter centre from the pixel lattice.
FilterBank build_filter_bank(const FilterBankConfig& config, Vec2 phase = {});

struct FeaturePoint {
    Vec2 pos;    // normalized frame, each component in [-0.5, 0.5]
    Vec2 pixel;  // continuous pixel coordinates (pixel i spans [i, i+1])
    int scale = 0;
    double magnitude = 0.0;  // J in [0,1], max over the scale equals 1
    double direction = 0.0;  // tau in [0, pi), edge direction
    std::vector<double> texture;  // L1-normalized orientation histogram
};

struct ExtractionOptions {
    double magnitude_threshold = 0.05;
    double histogram_radius = 2.0;  // in wavelengths
    unsigned threads = 1;
};

/// Grid-sampled Morlet edge features, ordered scale-major then row-major.
/// An empty result means the image carries no edge response.
std::vector<FeaturePoint> extract_features(const GrayImage& image, const FilterBankConfig& config,
                                           const ExtractionOptions& options = {});

/// Maps pixel coordinates into the unified frame: (p - (W/2, H/2)) / max(W, H).
Vec2 normalize_point(Vec2 p, double width, double height);

/// Inverse of normalize_point.
Vec2 denormalize_point(Vec2 q, double width, double height);

}  // namespace ldsym
