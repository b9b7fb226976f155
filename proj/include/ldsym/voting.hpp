#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ldsym/features.hpp"
#include "ldsym/geometry.hpp"

namespace ldsym {

/// A line {x : x . (cos theta, sin theta) = rho} in the normalized frame.
struct Axis {
    double theta = 0.0;  // normal angle, [0, pi)
    double rho = 0.0;    // signed distance from the origin
};

struct PairWeight {
    double m = 0.0;  // edge magnitude term
    double c = 0.0;  // mirror coefficient of the edge directions
    double d = 0.0;  // texture similarity
    double omega = 0.0;
};

struct AxisCandidate {
    double theta = 0.0;
    double rho = 0.0;
    double weight = 0.0;  // omega, or N * omega / sum(omega) once normalized
    double m = 0.0, c = 0.0, d = 0.0;
    std::size_t i = 0, j = 0;  // indices into the feature list
};

struct CandidateSet {
    std::vector<AxisCandidate> candidates;
    double total_raw_weight = 0.0;
    bool normalized = false;

    std::size_t size() const noexcept { return candidates.size(); }
    bool empty() const noexcept { return candidates.empty(); }
};

inline constexpr std::size_t kDefaultMaxPerScale = 300;

/// Same-scale unordered pairs (i < j). A scale with more than max_per_scale
/// features keeps only its strongest ones (by magnitude, ties by index).
std::vector<std::pair<std::size_t, std::size_t>> generate_pairs(const std::vector<FeaturePoint>& features,
                                                                 std::size_t max_per_scale = kDefaultMaxPerScale);

/// Perpendicular bisector of the segment pi -> pj. Throws
/// Error(DegeneratePair) for coincident points.
Axis triangulate(Vec2 pi, Vec2 pj);

/// Reflects p across the line.
Vec2 reflect(Vec2 p, Axis axis);

PairWeight pair_weight(const FeaturePoint& fi, const FeaturePoint& fj, double theta);

/// Triangulates and weights every pair; coincident pairs are skipped.
CandidateSet build_candidates(const std::vector<FeaturePoint>& features,
                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                              unsigned threads = 1);

/// Rescales weights to N * omega / sum(omega). Throws Error(NoEvidence) when
/// the total weight is zero.
CandidateSet normalize_weights(CandidateSet set);

}  // namespace ldsym
