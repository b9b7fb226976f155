#pragma once

#include <cstddef>
#include <vector>

#include "ldsym/geometry.hpp"
#include "ldsym/voting.hpp"

namespace ldsym {

struct KernelParams {
    double g = 0.03;  // linear bandwidth
    double k = 40.0;  // von Mises-Fisher concentration

    void validate() const;
};

inline constexpr double kRhoLimit = 0.70710678118654752440;  // sqrt(2)/2

/// Cell-centred (rho, theta) lattice; theta is circular with period pi.
struct GridSpec {
    int n_rho = 800;
    int n_theta = 180;

    void validate() const;
    double rho_min() const { return -kRhoLimit; }
    double rho_max() const { return kRhoLimit; }
    double rho_step() const { return 2.0 * kRhoLimit / n_rho; }
    double theta_step() const { return kPi / n_theta; }
    double rho_center(int i) const { return rho_min() + (i + 0.5) * rho_step(); }
    double theta_center(int j) const { return (j + 0.5) * theta_step(); }
    /// Bin containing rho (clamped) / theta (wrapped).
    int rho_bin(double rho) const;
    int theta_bin(double theta) const;
};

class DensityGrid {
public:
    DensityGrid() = default;
    DensityGrid(GridSpec spec, KernelParams params);

    const GridSpec& spec() const noexcept { return spec_; }
    const KernelParams& params() const noexcept { return params_; }

    double at(int rho_bin, int theta_bin) const { return values_[index(rho_bin, theta_bin)]; }
    double& at(int rho_bin, int theta_bin) { return values_[index(rho_bin, theta_bin)]; }

    /// Storage is theta-major: theta row j holds n_rho contiguous values.
    const std::vector<double>& values() const noexcept { return values_; }
    std::vector<double>& values() noexcept { return values_; }

    double max_value() const;

    /// Trapezoidal rule over rho times the rectangle rule on the doubled
    /// circle (d psi = 2 d theta).
    double integral() const;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * spec_.n_rho + static_cast<std::size_t>(i);
    }

    GridSpec spec_;
    KernelParams params_;
    std::vector<double> values_;
};

/// (2 pi)^-1/2 exp(-u^2 / 2)
double gaussian_kernel(double u);

/// exp(k * dot)
double vmf_kernel(double dot, double k);

/// 1 / (2 pi I0(k))
double vmf_norm_const(double k);

/// C(k) * exp(k * dot) evaluated as exp(k (dot - 1)) / (2 pi e^-k I0(k)),
/// finite for every k the grid supports.
double vmf_density(double dot, double k);

/// (cos 2 theta, sin 2 theta)
Vec2 embed_angle(double theta);

/// Weighted joint density at a single (rho, theta) point, summed over every
/// candidate without pruning.
double density_at(const CandidateSet& set, double rho, double theta, const KernelParams& params);

/// Joint density on the full grid. Kernel factors below 1e-17 of their peak
/// are skipped, so each cell is off by at most 1e-17 * sum(weights) * the
/// single-kernel peak. Cells sum candidates in index order; the result is
/// bit-identical for every thread count.
DensityGrid evaluate_joint_density(const CandidateSet& set, const GridSpec& spec, const KernelParams& params,
                                   unsigned threads = 1);

/// Weighted linear marginal over rho bin centres.
std::vector<double> linear_density(const CandidateSet& set, int n_bins = 800, double g = 0.03);

/// Weighted directional marginal over theta bin centres, on the doubled
/// circle: (C(k) / N) sum w exp(k y.mu).
std::vector<double> directional_density(const CandidateSet& set, int n_bins = 180, double k = 40.0);

}  // namespace ldsym
