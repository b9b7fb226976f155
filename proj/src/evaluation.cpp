#include "ldsym/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ldsym/error.hpp"

namespace ldsym {

namespace {

constexpr double kDegPerRad = 180.0 / kPi;

std::vector<std::size_t> score_order(const std::vector<Detection>& dets) {
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dets[a].score > dets[b].score; });
    return order;
}

bool close_enough(const Segment& s, const Segment& t, double angle_deg, double center_fraction) {
    if (!(angular_distance_deg(s, t) < angle_deg)) return false;
    const double limit = center_fraction * std::min(s.length(), t.length());
    return norm(s.center() - t.center()) < limit;
}

}  // namespace

double Segment::angle() const {
    const Vec2 d = b - a;
    return wrap_angle(std::atan2(d.y, d.x), kPi);
}

void ClusterOptions::validate() const {
    if (!(angle_tol_deg > 0.0 && angle_tol_deg <= 90.0))
        throw Error(ErrorKind::Config, "cluster angle tolerance must lie in (0, 90] degrees");
    if (!(center_tol > 0.0)) throw Error(ErrorKind::Config, "cluster centre tolerance must be > 0");
}

MatchReport make_report(std::size_t tp, std::size_t fp, std::size_t fn) {
    MatchReport r{tp, fp, fn, 1.0, 1.0, 0.0};
    if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double denom = r.precision + r.recall;
    r.f1 = denom > 0.0 ? 2.0 * r.precision * r.recall / denom : 0.0;
    return r;
}

double angular_distance_deg(const Segment& s, const Segment& t) {
    return circular_distance(s.angle(), t.angle(), kPi) * kDegPerRad;
}

bool axis_match(const Segment& det, const Segment& gt, const MatchCriteria& criteria) {
    return close_enough(det, gt, criteria.max_angle_deg, criteria.center_fraction);
}

MatchResult match_axes(const std::vector<Detection>& dets, const std::vector<Segment>& gts,
                       const MatchCriteria& criteria) {
    MatchResult result;
    result.order = score_order(dets);
    result.assignment.assign(dets.size(), -1);
    std::vector<char> gt_hit(gts.size(), 0);

    for (std::size_t pos = 0; pos < result.order.size(); ++pos) {
        const Segment& det = dets[result.order[pos]].segment;
        long best = -1;
        double best_angle = std::numeric_limits<double>::infinity();
        double best_center = best_angle;
        for (std::size_t g = 0; g < gts.size(); ++g) {
            if (!axis_match(det, gts[g], criteria)) continue;
            const double angle = angular_distance_deg(det, gts[g]);
            const double center = norm(det.center() - gts[g].center());
            if (angle < best_angle || (angle == best_angle && center < best_center)) {
                best = static_cast<long>(g);
                best_angle = angle;
                best_center = center;
            }
            gt_hit[g] = 1;
        }
        result.assignment[pos] = best;
        if (best >= 0)
            ++result.tp;
        else
            ++result.fp;
    }
    result.fn = static_cast<std::size_t>(std::count(gt_hit.begin(), gt_hit.end(), 0));
    return result;
}

std::vector<Detection> cluster_detections(const std::vector<Detection>& dets, const ClusterOptions& options) {
    options.validate();
    const auto order = score_order(dets);
    std::vector<char> absorbed(dets.size(), 0);
    std::vector<Detection> reps;
    for (std::size_t a = 0; a < order.size(); ++a) {
        if (absorbed[a]) continue;
        const Detection& seed = dets[order[a]];
        reps.push_back(seed);
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            if (absorbed[b]) continue;
            if (close_enough(seed.segment, dets[order[b]].segment, options.angle_tol_deg, options.center_tol))
                absorbed[b] = 1;
        }
    }
    return reps;
}

MatchReport evaluate_at_threshold(const std::vector<ImageEvaluation>& images, double threshold,
                                  const ClusterOptions& cluster, const MatchCriteria& criteria) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto& img : images) {
        std::vector<Detection> kept;
        for (const auto& d : img.detections)
            if (d.score >= threshold) kept.push_back(d);
        const auto result = match_axes(cluster_detections(kept, cluster), img.ground_truth, criteria);
        tp += result.tp;
        fp += result.fp;
        fn += result.fn;
    }
    return make_report(tp, fp, fn);
}

PrCurve pr_curve(const std::vector<ImageEvaluation>& images, const ClusterOptions& cluster,
                 const MatchCriteria& criteria) {
    const bool any_gt =
        std::any_of(images.begin(), images.end(), [](const ImageEvaluation& e) { return !e.ground_truth.empty(); });
    if (!any_gt) throw Error(ErrorKind::InvalidBenchmark, "benchmark has no ground-truth axes");

    std::vector<double> thresholds;
    for (const auto& img : images)
        for (const auto& d : img.detections) thresholds.push_back(d.score);
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    thresholds.insert(thresholds.begin(), std::numeric_limits<double>::infinity());

    PrCurve curve;
    curve.points.reserve(thresholds.size());
    for (double t : thresholds) {
        curve.points.push_back({t, evaluate_at_threshold(images, t, cluster, criteria)});
        if (curve.points.back().report.f1 > curve.points[curve.best].report.f1) curve.best = curve.points.size() - 1;
    }
    return curve;
}

}  // namespace ldsym
