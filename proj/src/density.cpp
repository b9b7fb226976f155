#include "ldsym/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldsym/error.hpp"
#include "ldsym/parallel.hpp"
#include "ldsym/special.hpp"

namespace ldsym {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
// ln(1e17): kernel factors smaller than exp(-kLogCut) of their peak are skipped.
constexpr double kLogCut = 39.143946580898;

void require_candidates(const CandidateSet& set) {
    if (set.empty()) throw Error(ErrorKind::NoEvidence, "no axis candidates to vote with");
}

}  // namespace

void KernelParams::validate() const {
    if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorKind::Config, "bandwidth g must be > 0");
    if (!(k >= 0.0) || !std::isfinite(k)) throw Error(ErrorKind::Config, "concentration k must be >= 0");
}

void GridSpec::validate() const {
    if (n_rho < 2) throw Error(ErrorKind::Config, "n_rho must be >= 2");
    if (n_theta < 2) throw Error(ErrorKind::Config, "n_theta must be >= 2");
}

int GridSpec::rho_bin(double rho) const {
    const int i = static_cast<int>(std::floor((rho - rho_min()) / rho_step()));
    return std::clamp(i, 0, n_rho - 1);
}

int GridSpec::theta_bin(double theta) const {
    const int j = static_cast<int>(std::floor(wrap_angle(theta, kPi) / theta_step()));
    return std::clamp(j, 0, n_theta - 1);
}

DensityGrid::DensityGrid(GridSpec spec, KernelParams params)
    : spec_(spec), params_(params), values_(static_cast<std::size_t>(spec.n_rho) * spec.n_theta, 0.0) {
    spec_.validate();
    params_.validate();
}

double DensityGrid::max_value() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double DensityGrid::integral() const {
    double total = 0.0;
    for (int j = 0; j < spec_.n_theta; ++j) {
        double row = 0.0;
        for (int i = 0; i < spec_.n_rho; ++i) {
            const double w = (i == 0 || i == spec_.n_rho - 1) ? 0.5 : 1.0;
            row += w * at(i, j);
        }
        total += row;
    }
    return total * spec_.rho_step() * 2.0 * spec_.theta_step();
}

double gaussian_kernel(double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); }

double vmf_kernel(double dot, double k) { return std::exp(k * dot); }

double vmf_norm_const(double k) { return 1.0 / (2.0 * kPi * bessel_i0(k)); }

double vmf_density(double dot, double k) {
    return std::exp(k * (dot - 1.0)) / (2.0 * kPi * bessel_i0_scaled(k));
}

Vec2 embed_angle(double theta) { return {std::cos(2.0 * theta), std::sin(2.0 * theta)}; }

double density_at(const CandidateSet& set, double rho, double theta, const KernelParams& params) {
    require_candidates(set);
    params.validate();
    const Vec2 y = embed_angle(theta);
    double sum = 0.0;
    for (const auto& c : set.candidates) {
        const Vec2 mu = embed_angle(c.theta);
        sum += c.weight * gaussian_kernel((rho - c.rho) / params.g) * vmf_density(dot(y, mu), params.k);
    }
    return sum / (static_cast<double>(set.size()) * params.g);
}

DensityGrid evaluate_joint_density(const CandidateSet& set, const GridSpec& spec, const KernelParams& params,
                                   unsigned threads) {
    require_candidates(set);
    DensityGrid grid(spec, params);
    const int n_rho = spec.n_rho, n_theta = spec.n_theta;
    const double g = params.g, k = params.k;
    const double drho = spec.rho_step(), dtheta = spec.theta_step();

    const double rho_reach = std::sqrt(2.0 * kLogCut) * g;
    // Half-width, in theta, of the directional window; the whole circle when
    // the kernel never drops below the cut.
    const double cos_floor = k > 0.0 ? 1.0 - kLogCut / k : -2.0;
    const double theta_reach = cos_floor <= -1.0 ? kPi : 0.5 * std::acos(cos_floor);
    const bool full_circle = theta_reach >= 0.5 * kPi;

    std::vector<Vec2> row_dirs(static_cast<std::size_t>(n_theta));
    for (int j = 0; j < n_theta; ++j) row_dirs[j] = embed_angle(spec.theta_center(j));

    auto& values = grid.values();
    parallel_for(static_cast<std::size_t>(n_theta), threads, [&](std::size_t row_begin, std::size_t row_end) {
        std::vector<double> linear(static_cast<std::size_t>(n_rho));
        std::vector<int> rows;
        for (const auto& c : set.candidates) {
            if (c.weight == 0.0) continue;

            // Theta rows of this worker inside the directional window.
            int j_lo = 0, span = n_theta;
            if (!full_circle) {
                j_lo = static_cast<int>(std::floor((c.theta - theta_reach) / dtheta - 0.5));
                const int j_hi = static_cast<int>(std::ceil((c.theta + theta_reach) / dtheta - 0.5));
                span = std::min(j_hi - j_lo + 1, n_theta);
            }
            rows.clear();
            for (int s = 0; s < span; ++s) {
                const int j = (((j_lo + s) % n_theta) + n_theta) % n_theta;
                if (static_cast<std::size_t>(j) >= row_begin && static_cast<std::size_t>(j) < row_end)
                    rows.push_back(j);
            }
            if (rows.empty()) continue;

            const int i_lo = std::max(0, static_cast<int>(std::floor((c.rho - rho_reach - spec.rho_min()) / drho - 0.5)));
            const int i_hi =
                std::min(n_rho - 1, static_cast<int>(std::ceil((c.rho + rho_reach - spec.rho_min()) / drho - 0.5)));
            if (i_lo > i_hi) continue;
            for (int i = i_lo; i <= i_hi; ++i) {
                const double u = (spec.rho_center(i) - c.rho) / g;
                linear[i] = std::exp(-0.5 * u * u);
            }

            const Vec2 mu = embed_angle(c.theta);
            for (const int j : rows) {
                const double directional = std::exp(k * (dot(row_dirs[j], mu) - 1.0));
                const double b = c.weight * directional;
                if (b == 0.0) continue;
                double* row = values.data() + static_cast<std::size_t>(j) * n_rho;
                for (int i = i_lo; i <= i_hi; ++i) row[i] += b * linear[i];
            }
        }
    });

    const double scale = kInvSqrt2Pi / (2.0 * kPi * bessel_i0_scaled(k)) / (static_cast<double>(set.size()) * g);
    for (auto& v : values) v *= scale;
    return grid;
}

std::vector<double> linear_density(const CandidateSet& set, int n_bins, double g) {
    require_candidates(set);
    KernelParams{g, 0.0}.validate();
    GridSpec spec{n_bins, 2};
    spec.validate();
    std::vector<double> out(static_cast<std::size_t>(n_bins), 0.0);
    for (int i = 0; i < n_bins; ++i) {
        const double x = spec.rho_center(i);
        double sum = 0.0;
        for (const auto& c : set.candidates) sum += c.weight * gaussian_kernel((x - c.rho) / g);
        out[i] = sum / (static_cast<double>(set.size()) * g);
    }
    return out;
}

std::vector<double> directional_density(const CandidateSet& set, int n_bins, double k) {
    require_candidates(set);
    KernelParams{1.0, k}.validate();
    GridSpec spec{2, n_bins};
    spec.validate();
    std::vector<double> out(static_cast<std::size_t>(n_bins), 0.0);
    for (int j = 0; j < n_bins; ++j) {
        const Vec2 y = embed_angle(spec.theta_center(j));
        double sum = 0.0;
        for (const auto& c : set.candidates) sum += c.weight * vmf_density(dot(y, embed_angle(c.theta)), k);
        out[j] = sum / static_cast<double>(set.size());
    }
    return out;
}

}  // namespace ldsym
