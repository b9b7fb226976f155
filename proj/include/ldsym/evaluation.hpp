#pragma once

#include <cstddef>
#include <vector>

#include "ldsym/geometry.hpp"

namespace ldsym {

/// A pixel-space axis segment; ground truth and detections share this form.
struct Segment {
    Vec2 a, b;

    Vec2 center() const { return 0.5 * (a + b); }
    double length() const { return norm(b - a); }
    /// Direction of the segment, [0, pi).
    double angle() const;
};

struct Detection {
    Segment segment;
    double score = 0.0;
};

struct MatchCriteria {
    double max_angle_deg = 10.0;      // strict: angle difference must be below
    double center_fraction = 0.2;     // of the shorter segment's length
};

struct ClusterOptions {
    double angle_tol_deg = 10.0;
    double center_tol = 0.2;

    void validate() const;
};

struct MatchReport {
    std::size_t tp = 0, fp = 0, fn = 0;
    double precision = 1.0, recall = 1.0, f1 = 1.0;
};

/// Precision/recall/F1 from counts; an empty denominator yields rate 1 and
/// F1 is 0 when both rates are 0.
MatchReport make_report(std::size_t tp, std::size_t fp, std::size_t fn);

/// Angle between two undirected lines, degrees in [0, 90].
double angular_distance_deg(const Segment& s, const Segment& t);

bool axis_match(const Segment& det, const Segment& gt, const MatchCriteria& criteria = {});

struct MatchResult {
    std::size_t tp = 0, fp = 0, fn = 0;
    /// Per detection, in score-sorted order: best matching ground-truth index or -1.
    std::vector<long> assignment;
    /// Permutation applied by the score sort (sorted position -> input index).
    std::vector<std::size_t> order;
};

/// Detections are sorted by score (descending, stable on input order). Each
/// detection matching any ground truth counts once as TP; several
/// detections may share one ground-truth axis.
MatchResult match_axes(const std::vector<Detection>& dets, const std::vector<Segment>& gts,
                       const MatchCriteria& criteria = {});

/// Greedy clustering; each cluster is represented by its top scorer.
std::vector<Detection> cluster_detections(const std::vector<Detection>& dets, const ClusterOptions& options = {});

struct ImageEvaluation {
    std::vector<Detection> detections;
    std::vector<Segment> ground_truth;
};

struct PrPoint {
    double threshold = 0.0;  // detections with score >= threshold are kept
    MatchReport report;
};

struct PrCurve {
    /// Starts at threshold +inf (nothing kept), then one point per distinct
    /// detection score in descending order.
    std::vector<PrPoint> points;
    std::size_t best = 0;  // index of the max-F1 point

    double max_f1() const { return points.at(best).report.f1; }
    double max_f1_threshold() const { return points.at(best).threshold; }
};

/// Clusters then matches every image at one score threshold and aggregates.
MatchReport evaluate_at_threshold(const std::vector<ImageEvaluation>& images, double threshold,
                                  const ClusterOptions& cluster = {}, const MatchCriteria& criteria = {});

/// Throws Error(InvalidBenchmark) when no image carries ground truth.
PrCurve pr_curve(const std::vector<ImageEvaluation>& images, const ClusterOptions& cluster = {},
                 const MatchCriteria& criteria = {});

}  // namespace ldsym
