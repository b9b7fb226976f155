#pragma once

#include <cstddef>
#include <vector>

#include "ldsym/density.hpp"
#include "ldsym/features.hpp"
#include "ldsym/voting.hpp"

namespace ldsym {

struct PeakOptions {
    int nms_rho_radius = 17;   // bins
    int nms_theta_radius = 5;  // bins
    double rel_threshold = 0.05;
    std::size_t top_k = 5;

    void validate() const;
};

struct Peak {
    int rho_bin = 0;
    int theta_bin = 0;
    double rho = 0.0;
    double theta = 0.0;
    double score = 0.0;
};

struct SymmetryAxis {
    double theta = 0.0;
    double rho = 0.0;
    double score = 0.0;
    Vec2 p1, p2;  // pixel endpoints, lexicographically ordered
    std::size_t support_count = 0;
};

/// Non-maximal suppression over the grid. A cell survives when it beats
/// every other cell of its window, where equal values are resolved in favour
/// of the lower (rho_bin, theta_bin) index. Theta wraps, rho does not.
/// Result is sorted by score (descending) and truncated to top_k.
std::vector<Peak> find_peaks(const DensityGrid& grid, const PeakOptions& options = {}, unsigned threads = 1);

/// Indices of positive-weight candidates within 2g in rho and 2/sqrt(k) on
/// the doubled circle of the peak.
std::vector<std::size_t> supporting_pairs(const Peak& peak, const CandidateSet& set, const KernelParams& params);

/// Segment spanned by the supporting features projected onto the peak's
/// line, mapped back to pixels. Throws Error(DegenerateExtent) when every
/// projection coincides.
SymmetryAxis axis_extent(const Peak& peak, const std::vector<std::size_t>& supports, const CandidateSet& set,
                         const std::vector<FeaturePoint>& features, int width, int height);

/// Pixel-space convex hull of the supporting features, for overlays.
std::vector<Vec2> support_hull(const std::vector<std::size_t>& supports, const CandidateSet& set,
                               const std::vector<FeaturePoint>& features);

}  // namespace ldsym
