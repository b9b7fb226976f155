#include "ldsym/voting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ldsym/error.hpp"
#include "ldsym/parallel.hpp"

namespace ldsym {

std::vector<std::pair<std::size_t, std::size_t>> generate_pairs(const std::vector<FeaturePoint>& features,
                                                                 std::size_t max_per_scale) {
    std::map<int, std::vector<std::size_t>> by_scale;
    for (std::size_t i = 0; i < features.size(); ++i) by_scale[features[i].scale].push_back(i);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto& [scale, idx] : by_scale) {
        if (idx.size() > max_per_scale) {
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return features[a].magnitude > features[b].magnitude;
            });
            idx.resize(max_per_scale);
            std::sort(idx.begin(), idx.end());
        }
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) pairs.emplace_back(idx[a], idx[b]);
    }
    return pairs;
}

Axis triangulate(Vec2 pi, Vec2 pj) {
    Vec2 delta = pj - pi;
    if (delta.x == 0.0 && delta.y == 0.0)
        throw Error(ErrorKind::DegeneratePair, "cannot triangulate coincident points");
    // Orient the segment into the upper half-plane first so that swapping
    // the points yields bit-identical output.
    if (delta.y < 0.0 || (delta.y == 0.0 && delta.x < 0.0)) delta = -1.0 * delta;
    double theta = std::atan2(delta.y, delta.x) + 0.0;  // no negative zero
    if (theta >= kPi) theta -= kPi;
    const Vec2 mid = 0.5 * (pi + pj);
    return {theta, mid.x * std::cos(theta) + mid.y * std::sin(theta)};
}

Vec2 reflect(Vec2 p, Axis axis) {
    const Vec2 n{std::cos(axis.theta), std::sin(axis.theta)};
    return p - (2.0 * (dot(p, n) - axis.rho)) * n;
}

PairWeight pair_weight(const FeaturePoint& fi, const FeaturePoint& fj, double theta) {
    PairWeight w;
    w.m = std::sqrt(fi.magnitude * fj.magnitude);
    w.c = std::abs(std::cos(fi.direction + fj.direction - 2.0 * theta));
    double l1 = 0.0;
    const std::size_t bins = std::min(fi.texture.size(), fj.texture.size());
    for (std::size_t b = 0; b < bins; ++b) l1 += std::abs(fi.texture[b] - fj.texture[b]);
    w.d = std::clamp(1.0 - 0.5 * l1, 0.0, 1.0);
    w.m = std::clamp(w.m, 0.0, 1.0);
    w.c = std::clamp(w.c, 0.0, 1.0);
    w.omega = w.m * w.c * w.d;
    return w;
}

CandidateSet build_candidates(const std::vector<FeaturePoint>& features,
                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs, unsigned threads) {
    std::vector<AxisCandidate> all(pairs.size());
    std::vector<char> keep(pairs.size(), 0);
    parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t n = begin; n < end; ++n) {
            const auto [i, j] = pairs[n];
            const FeaturePoint& fi = features.at(i);
            const FeaturePoint& fj = features.at(j);
            if (fi.pos == fj.pos) continue;
            const Axis axis = triangulate(fi.pos, fj.pos);
            const PairWeight w = pair_weight(fi, fj, axis.theta);
            all[n] = {axis.theta, axis.rho, w.omega, w.m, w.c, w.d, i, j};
            keep[n] = 1;
        }
    });

    CandidateSet set;
    set.candidates.reserve(pairs.size());
    for (std::size_t n = 0; n < all.size(); ++n)
        if (keep[n]) set.candidates.push_back(all[n]);
    for (const auto& c : set.candidates) set.total_raw_weight += c.weight;
    return set;
}

CandidateSet normalize_weights(CandidateSet set) {
    double total = 0.0;
    for (const auto& c : set.candidates) total += c.weight;
    if (!(total > 0.0)) throw Error(ErrorKind::NoEvidence, "all candidate weights are zero");
    const double n = static_cast<double>(set.candidates.size());
    for (auto& c : set.candidates) c.weight = n * c.weight / total;
    if (!set.normalized) set.total_raw_weight = total;
    set.normalized = true;
    return set;
}

}  // namespace ldsym
