#include "ldsym/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldsym/error.hpp"
#include "ldsym/parallel.hpp"

namespace ldsym {

void PeakOptions::validate() const {
    if (nms_rho_radius < 1 || nms_theta_radius < 1) throw Error(ErrorKind::Config, "NMS radii must be >= 1");
    if (!(rel_threshold > 0.0 && rel_threshold <= 1.0))
        throw Error(ErrorKind::Config, "rel_threshold must lie in (0, 1]");
    if (top_k < 1) throw Error(ErrorKind::Config, "top_k must be >= 1");
}

std::vector<Peak> find_peaks(const DensityGrid& grid, const PeakOptions& options, unsigned threads) {
    options.validate();
    const GridSpec& spec = grid.spec();
    const double global_max = grid.max_value();
    if (!(global_max > 0.0)) throw Error(ErrorKind::NoEvidence, "density grid is zero everywhere");
    const double floor_value = options.rel_threshold * global_max;
    const int n_rho = spec.n_rho, n_theta = spec.n_theta;
    const int r_rho = options.nms_rho_radius;
    const int r_theta = std::min(options.nms_theta_radius, n_theta / 2);

    // (rho_bin, theta_bin) lexicographic order breaks ties.
    auto beats = [&](int i, int j, int oi, int oj) {
        const double v = grid.at(i, j), o = grid.at(oi, oj);
        if (v != o) return v > o;
        return i < oi || (i == oi && j < oj);
    };

    std::vector<std::vector<Peak>> per_row(static_cast<std::size_t>(n_theta));
    parallel_for(per_row.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t jj = begin; jj < end; ++jj) {
            const int j = static_cast<int>(jj);
            for (int i = 0; i < n_rho; ++i) {
                const double v = grid.at(i, j);
                if (!(v > 0.0) || v < floor_value) continue;
                bool is_peak = true;
                for (int dj = -r_theta; dj <= r_theta && is_peak; ++dj) {
                    const int oj = ((j + dj) % n_theta + n_theta) % n_theta;
                    for (int di = -r_rho; di <= r_rho; ++di) {
                        const int oi = i + di;
                        if (oi < 0 || oi >= n_rho || (oi == i && oj == j)) continue;
                        if (!beats(i, j, oi, oj)) {
                            is_peak = false;
                            break;
                        }
                    }
                }
                if (is_peak) per_row[jj].push_back({i, j, spec.rho_center(i), spec.theta_center(j), v});
            }
        }
    });

    std::vector<Peak> peaks;
    for (auto& row : per_row) peaks.insert(peaks.end(), row.begin(), row.end());
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.rho_bin < b.rho_bin || (a.rho_bin == b.rho_bin && a.theta_bin < b.theta_bin);
    });
    if (peaks.size() > options.top_k) peaks.resize(options.top_k);
    return peaks;
}

std::vector<std::size_t> supporting_pairs(const Peak& peak, const CandidateSet& set, const KernelParams& params) {
    params.validate();
    const double rho_tol = 2.0 * params.g;
    const double angle_tol = params.k > 0.0 ? 2.0 / std::sqrt(params.k) : std::numeric_limits<double>::infinity();
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < set.candidates.size(); ++n) {
        const auto& c = set.candidates[n];
        if (!(c.weight > 0.0)) continue;
        if (std::abs(c.rho - peak.rho) > rho_tol) continue;
        if (circular_distance(2.0 * c.theta, 2.0 * peak.theta, 2.0 * kPi) > angle_tol) continue;
        out.push_back(n);
    }
    return out;
}

SymmetryAxis axis_extent(const Peak& peak, const std::vector<std::size_t>& supports, const CandidateSet& set,
                         const std::vector<FeaturePoint>& features, int width, int height) {
    if (supports.empty()) throw Error(ErrorKind::DegenerateExtent, "axis has no supporting pairs");
    const Vec2 normal{std::cos(peak.theta), std::sin(peak.theta)};
    const Vec2 along{-normal.y, normal.x};

    double t_min = std::numeric_limits<double>::infinity();
    double t_max = -t_min;
    for (std::size_t n : supports) {
        const auto& c = set.candidates.at(n);
        for (std::size_t f : {c.i, c.j}) {
            const double t = dot(features.at(f).pos, along);
            t_min = std::min(t_min, t);
            t_max = std::max(t_max, t);
        }
    }
    if (!(t_max - t_min > 1e-12)) throw Error(ErrorKind::DegenerateExtent, "axis support has zero extent");

    const Vec2 foot = peak.rho * normal;
    Vec2 a = denormalize_point(foot + t_min * along, width, height);
    Vec2 b = denormalize_point(foot + t_max * along, width, height);
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    return {peak.theta, peak.rho, peak.score, a, b, supports.size()};
}

std::vector<Vec2> support_hull(const std::vector<std::size_t>& supports, const CandidateSet& set,
                               const std::vector<FeaturePoint>& features) {
    std::vector<Vec2> pts;
    pts.reserve(2 * supports.size());
    for (std::size_t n : supports) {
        const auto& c = set.candidates.at(n);
        pts.push_back(features.at(c.i).pixel);
        pts.push_back(features.at(c.j).pixel);
    }
    return convex_hull(pts);
}

}  // namespace ldsym
