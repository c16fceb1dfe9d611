#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "wigner/entropies.hpp"
#include "wigner/spectrum.hpp"

namespace wigner {

/// Uniform grid over [center - half_width, center + half_width], n points.
struct GridSpec {
    double half_width;
    int n;
    double center = 0.0;

    double spacing() const { return 2.0 * half_width / (n - 1); }
    std::vector<double> points() const;
};

/// Grid sized for the psi_x kernel: wells +-x0/2 with >= 6 Delta_x margin and
/// spacing below an eighth of the narrowest Gaussian width.
GridSpec default_svd_grid(const HarmonicApproximation& ha, int n = 1024);

/// Squared singular values (descending) of the trapezoid-weighted psi_x kernel
/// W^{1/2} K W^{1/2}; these approximate the x occupancies, each appearing
/// twice (parity degeneracy). Throws std::invalid_argument when the grid does
/// not resolve the kernel or misses the wells.
std::vector<double> schmidt_svd(const HarmonicApproximation& ha, const GridSpec& grid);

/// Averages consecutive pairs of the descending squared singular values.
std::vector<double> pair_averaged(std::span<const double> occupancies);

/// Max deviation over the sample points between
/// exp(-(u^2+v^2) y^2/(1-y^2) + 2uv y/(1-y^2)) and the truncated series
/// sqrt(1-y^2) sum_{l<=L} y^l h~_l(u) h~_l(v) with orthonormalized Hermite
/// polynomials. Throws std::domain_error for |y| >= 1 or L > 200.
double mehler_max_deviation(double y, std::span<const std::pair<double, double>> points,
                            int l_max);

/// 1D Dirichlet Schroedinger problem -psi'' + V(u) psi = E psi on the grid.
struct FDProblem {
    std::function<double(double)> potential;
    GridSpec grid;
};

struct FDResult {
    double energy;
    Eigen::VectorXd psi;          // interior points, L2-normalized, psi >= 0
    std::vector<double> points;   // interior abscissas
    double boundary_amplitude;    // max edge |psi| relative to max |psi|
};

/// Ground state of the three-point finite-difference discretization.
/// Eigenvalues from the tridiagonal QL solve, eigenvector by inverse
/// iteration. Throws std::invalid_argument for non-finite potential values,
/// std::runtime_error on solver failure.
FDResult fd_ground_state(const FDProblem& problem);

/// FD box for the x axis cut: [x0 - 10 Delta_x, x0 + 10 Delta_x], clipped away
/// from the origin for singular families.
GridSpec default_fd_grid_x(const HarmonicApproximation& ha, const CouplingConfig& cfg,
                           int n = 4096);

/// FD box for the transverse cut through (x0, 0).
GridSpec default_fd_grid_y(const HarmonicApproximation& ha, double eps, int n = 4096);

/// Mean and standard deviation of psi treated as a density (the width
/// convention behind Delta_x = 2^{1/4}/sqrt(omega_x)).
std::pair<double, double> density_moments(const FDResult& fd);

/// Three-way comparison per alpha: closed forms, sums over the enumerated
/// spectrum, and SVD x occupancies combined with the analytic y branch.
struct CrosscheckRow {
    double alpha;  // +inf = min-entropy
    double closed_form;
    double spectrum_sum;
    double svd_based;
    double max_deviation;
};

struct CrosscheckReport {
    std::vector<CrosscheckRow> rows;
    double linear_closed = 0.0;
    double linear_spectrum = 0.0;   // 1 - sum Lambda^2 over the enumeration
    double linear_deviation = 0.0;
    double svd_mass = 0.0;          // sum of squared singular values
};

CrosscheckReport crosscheck_entropies(const HarmonicApproximation& ha,
                                      const TrapGeometry& geometry,
                                      std::span<const double> alphas,
                                      const GridSpec* svd_grid = nullptr,
                                      double tail_bound = 1e-15);

}  // namespace wigner
