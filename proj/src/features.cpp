#include "ldsym/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldsym/error.hpp"
#include "ldsym/parallel.hpp"

namespace ldsym {

namespace {

// Envelope width relative to wavelength; gives a central frequency of pi
// radians per envelope sigma, after which the admissibility correction is
// still a small perturbation.
constexpr double kSigmaPerWavelength = 0.5;
constexpr double kTruncationSigmas = 3.0;
// Below this the whole scale is treated as featureless (constant input
// produces round-off-level responses only).
constexpr double kResponseFloor = 1e-10;

MorletFilter make_filter(const FilterBankConfig& config, int scale, int orientation, Vec2 phase) {
    MorletFilter f;
    f.scale = scale;
    f.orientation = orientation;
    f.wavelength = config.wavelength(scale);
    f.sigma = kSigmaPerWavelength * f.wavelength;
    f.angle = kPi * orientation / config.num_orientations;
    f.radius = static_cast<int>(std::ceil(kTruncationSigmas * f.sigma));
    f.size_x = 2 * f.radius + 1 + (phase.x > 0.0 ? 1 : 0);
    f.size_y = 2 * f.radius + 1 + (phase.y > 0.0 ? 1 : 0);

    const double freq = 2.0 * kPi / f.wavelength;
    const double kx = freq * std::cos(f.angle), ky = freq * std::sin(f.angle);
    const double inv2s2 = 1.0 / (2.0 * f.sigma * f.sigma);

    const std::size_t n = static_cast<std::size_t>(f.size_x) * f.size_y;
    std::vector<std::complex<double>> wave(n);
    std::vector<double> envelope(n);
    std::complex<double> wave_mass = 0.0;
    double env_mass = 0.0;
    for (int v = 0; v < f.size_y; ++v) {
        const double dy = v - f.radius - phase.y;
        for (int u = 0; u < f.size_x; ++u) {
            const double dx = u - f.radius - phase.x;
            const std::size_t i = static_cast<std::size_t>(v) * f.size_x + u;
            envelope[i] = std::exp(-(dx * dx + dy * dy) * inv2s2);
            wave[i] = std::polar(1.0, kx * dx + ky * dy);
            wave_mass += wave[i] * envelope[i];
            env_mass += envelope[i];
        }
    }
    // Subtracting kappa * envelope zeroes the DC response exactly.
    const std::complex<double> kappa = wave_mass / env_mass;
    f.taps.resize(n);
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        f.taps[i] = (wave[i] - kappa) * envelope[i];
        energy += std::norm(f.taps[i]);
    }
    const double scale_by = 1.0 / std::sqrt(energy);
    for (auto& t : f.taps) t *= scale_by;
    return f;
}

inline int reflect_index(int i, int n) {
    if (i < 0) return -i - 1;
    if (i >= n) return 2 * n - i - 1;
    return i;
}

struct Grid {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;
    int stride = 1;
};

Grid make_grid(int width, int height, int stride) {
    Grid g;
    g.stride = stride;
    g.nx = width / stride;
    g.ny = height / stride;
    // Centred on the image so that mirroring maps the grid onto itself.
    g.x0 = 0.5 * width - 0.5 * (g.nx - 1) * stride;
    g.y0 = 0.5 * height - 0.5 * (g.ny - 1) * stride;
    return g;
}

std::vector<FeaturePoint> extract_scale(const GrayImage& image, const FilterBankConfig& config,
                                        const ExtractionOptions& options, int scale) {
    const int W = image.width(), H = image.height();
    const Grid grid = make_grid(W, H, config.stride(scale));
    if (grid.nx < 1 || grid.ny < 1) return {};

    const Vec2 base{std::floor(grid.x0 - 0.5), std::floor(grid.y0 - 0.5)};
    const Vec2 phase{grid.x0 - 0.5 - base.x, grid.y0 - 0.5 - base.y};
    const int n_orient = config.num_orientations;
    std::vector<MorletFilter> filters;
    filters.reserve(n_orient);
    for (int o = 0; o < n_orient; ++o) filters.push_back(make_filter(config, scale, o, phase));

    const MorletFilter& f0 = filters.front();
    if (f0.size_x > W || f0.size_y > H)
        throw Error(ErrorKind::Config,
                    "filter of scale " + std::to_string(scale) + " (" + std::to_string(f0.size_x) + "x" +
                        std::to_string(f0.size_y) + " taps) exceeds the " + std::to_string(W) + "x" +
                        std::to_string(H) + " image");

    const std::size_t n_points = static_cast<std::size_t>(grid.nx) * grid.ny;
    std::vector<double> response(n_points * n_orient);
    std::vector<double> patch(static_cast<std::size_t>(f0.size_x) * f0.size_y);
    for (int gy = 0; gy < grid.ny; ++gy) {
        for (int gx = 0; gx < grid.nx; ++gx) {
            const int px0 = static_cast<int>(base.x) + gx * grid.stride - f0.radius;
            const int py0 = static_cast<int>(base.y) + gy * grid.stride - f0.radius;
            for (int v = 0; v < f0.size_y; ++v) {
                const int iy = reflect_index(py0 + v, H);
                for (int u = 0; u < f0.size_x; ++u)
                    patch[static_cast<std::size_t>(v) * f0.size_x + u] = image.at(reflect_index(px0 + u, W), iy);
            }
            const std::size_t point = static_cast<std::size_t>(gy) * grid.nx + gx;
            for (int o = 0; o < n_orient; ++o) {
                const auto& taps = filters[o].taps;
                double re = 0.0, im = 0.0;
                for (std::size_t i = 0; i < patch.size(); ++i) {
                    re += patch[i] * taps[i].real();
                    im += patch[i] * taps[i].imag();
                }
                response[point * n_orient + o] = std::hypot(re, im);
            }
        }
    }

    std::vector<double> peak(n_points, 0.0);
    std::vector<int> best(n_points, 0);
    double scale_max = 0.0;
    for (std::size_t p = 0; p < n_points; ++p) {
        for (int o = 0; o < n_orient; ++o) {
            const double r = response[p * n_orient + o];
            if (r > peak[p]) {
                peak[p] = r;
                best[p] = o;
            }
        }
        scale_max = std::max(scale_max, peak[p]);
    }
    if (scale_max < kResponseFloor) return {};

    // Neighbourhood offsets on the sampling grid within the histogram radius.
    const double radius = options.histogram_radius * config.wavelength(scale);
    const int reach = static_cast<int>(std::floor(radius / grid.stride));
    std::vector<std::pair<int, int>> offsets;
    for (int b = -reach; b <= reach; ++b)
        for (int a = -reach; a <= reach; ++a)
            if (std::hypot(a * grid.stride, b * grid.stride) <= radius + 1e-9) offsets.emplace_back(a, b);

    std::vector<FeaturePoint> out;
    for (int gy = 0; gy < grid.ny; ++gy) {
        for (int gx = 0; gx < grid.nx; ++gx) {
            const std::size_t p = static_cast<std::size_t>(gy) * grid.nx + gx;
            const double J = peak[p] / scale_max;
            if (J < options.magnitude_threshold) continue;

            FeaturePoint fp;
            fp.pixel = {grid.x0 + gx * grid.stride, grid.y0 + gy * grid.stride};
            fp.pos = normalize_point(fp.pixel, W, H);
            fp.scale = scale;
            fp.magnitude = J;
            fp.direction = wrap_angle(filters[best[p]].angle + 0.5 * kPi, kPi);

            fp.texture.assign(n_orient, 0.0);
            for (auto [a, b] : offsets) {
                const int nx = gx + a, ny = gy + b;
                if (nx < 0 || ny < 0 || nx >= grid.nx || ny >= grid.ny) continue;
                const std::size_t q = static_cast<std::size_t>(ny) * grid.nx + nx;
                for (int o = 0; o < n_orient; ++o) fp.texture[o] += response[q * n_orient + o];
            }
            double total = 0.0;
            for (double h : fp.texture) total += h;
            for (double& h : fp.texture) h = total > 0.0 ? h / total : 1.0 / n_orient;
            out.push_back(std::move(fp));
        }
    }
    return out;
}

}  // namespace

void FilterBankConfig::validate() const {
    if (num_scales < 1) throw Error(ErrorKind::Config, "num_scales must be >= 1");
    if (num_orientations < 2) throw Error(ErrorKind::Config, "num_orientations must be >= 2");
    if (!(base_wavelength >= 2.0)) throw Error(ErrorKind::Config, "base_wavelength must be >= 2");
    if (grid_stride < 0) throw Error(ErrorKind::Config, "grid_stride must be >= 0");
}

double FilterBankConfig::wavelength(int scale) const { return std::ldexp(base_wavelength, scale); }

int FilterBankConfig::stride(int scale) const {
    if (grid_stride > 0) return grid_stride;
    return std::max(1, static_cast<int>(std::lround(wavelength(scale))));
}

FilterBank build_filter_bank(const FilterBankConfig& config, Vec2 phase) {
    config.validate();
    FilterBank bank{config, phase, {}};
    bank.filters.reserve(static_cast<std::size_t>(config.num_scales) * config.num_orientations);
    for (int s = 0; s < config.num_scales; ++s)
        for (int o = 0; o < config.num_orientations; ++o) bank.filters.push_back(make_filter(config, s, o, phase));
    return bank;
}

std::vector<FeaturePoint> extract_features(const GrayImage& image, const FilterBankConfig& config,
                                           const ExtractionOptions& options) {
    config.validate();
    if (!(options.magnitude_threshold >= 0.0 && options.magnitude_threshold <= 1.0))
        throw Error(ErrorKind::Config, "magnitude threshold must lie in [0,1]");
    if (!(options.histogram_radius > 0.0)) throw Error(ErrorKind::Config, "histogram radius must be > 0");

    std::vector<std::vector<FeaturePoint>> per_scale(config.num_scales);
    parallel_for(per_scale.size(), options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s)
            per_scale[s] = extract_scale(image, config, options, static_cast<int>(s));
    });

    std::vector<FeaturePoint> out;
    for (auto& scale : per_scale)
        for (auto& fp : scale) out.push_back(std::move(fp));
    return out;
}

Vec2 normalize_point(Vec2 p, double width, double height) {
    const double s = std::max(width, height);
    return {(p.x - 0.5 * width) / s, (p.y - 0.5 * height) / s};
}

Vec2 denormalize_point(Vec2 q, double width, double height) {
    const double s = std::max(width, height);
    return {q.x * s + 0.5 * width, q.y * s + 0.5 * height};
}

}  // namespace ldsym
